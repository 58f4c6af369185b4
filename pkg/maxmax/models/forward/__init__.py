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

from maxmax.models.forward.base import BaseForwardModel
from maxmax.models.forward.base import coverage_statistic
from maxmax.models.forward.base import sample_uniform_candidates
from maxmax.models.forward.gaussian import GaussianForwardModel
from maxmax.models.forward.quantile import QuantileForwardModel
from maxmax.models.forward.utils import get_forward_model
from maxmax.models.forward.utils import get_forward_model_class
from maxmax.models.forward.utils import list_forward_models

__all__ = [
    "BaseForwardModel",
    "GaussianForwardModel",
    "QuantileForwardModel",
    "coverage_statistic",
    "get_forward_model",
    "get_forward_model_class",
    "list_forward_models",
    "sample_uniform_candidates",
]
