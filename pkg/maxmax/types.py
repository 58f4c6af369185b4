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

__all__ = ["type_positive_int", "type_probability"]

import argparse


def type_positive_int(value):
    """Custom type for count arguments such as --episodes or --n-seeds.

    Parameters
    ----------
    value: str
        The argument value.

    Returns
    -------
    int:
        A strictly positive integer.
    """
    try:
        value_i = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"Expected an integer, got '{value}'")

    if value_i < 1:
        raise argparse.ArgumentTypeError(f"Expected a positive integer, got {value_i}")
    return value_i


def type_probability(value):
    """Custom type for --exploration, a float in [0, 1]."""
    try:
        value_f = float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"Expected a float, got '{value}'")

    if not 0.0 <= value_f <= 1.0:
        raise argparse.ArgumentTypeError(f"Expected a value in [0, 1], got {value_f}")
    return value_f
