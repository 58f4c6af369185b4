# Copyright 2023-2024 The MaxMax Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

__all__ = [
    "ConfigParseError",
    "InvalidArgumentError",
    "InvalidConfigurationError",
    "NumericFailureError",
    "ShapeError",
    "TheoryCheckError",
    "UnknownKeyError",
]


class InvalidConfigurationError(ValueError):
    pass


class ConfigParseError(InvalidConfigurationError):
    def __init__(self, message, line_number=None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class UnknownKeyError(ConfigParseError):
    pass


class ShapeError(ValueError):
    pass


class NumericFailureError(ArithmeticError):
    pass


class InvalidArgumentError(ValueError):
    pass


class TheoryCheckError(AssertionError):
    pass
