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

from maxmax.envs.base import BaseEnv
from maxmax.envs.base import NoiseConfig
from maxmax.envs.base import StepResult
from maxmax.envs.differential import DifferentialGame
from maxmax.envs.differential import DifferentialGame3
from maxmax.envs.differential import DifferentialGame4
from maxmax.envs.differential import DifferentialGame5
from maxmax.envs.differential import dg_location_metric
from maxmax.envs.differential import dg_reset
from maxmax.envs.differential import dg_reward
from maxmax.envs.differential import dg_step
from maxmax.envs.matrix import matrix_expected_q
from maxmax.envs.matrix import matrix_payoff
from maxmax.envs.matrix import matrix_threshold_sweep
from maxmax.envs.mpe import CooperativeNavigation
from maxmax.envs.mpe import HeterogeneousAgentsNavigation
from maxmax.envs.mpe import HeterogeneousTargetsNavigation
from maxmax.envs.mpe import MorePenaltyNavigation
from maxmax.envs.mpe import MpeEnv
from maxmax.envs.mpe import MpeTaskSpec
from maxmax.envs.mpe import PredatorPrey
from maxmax.envs.mpe import SequentialNavigation
from maxmax.envs.mpe import mpe_reset
from maxmax.envs.mpe import mpe_reward
from maxmax.envs.mpe import mpe_step
from maxmax.envs.mpe import pp_prey_policy
from maxmax.envs.utils import get_env
from maxmax.envs.utils import get_env_class
from maxmax.envs.utils import list_envs

__all__ = [
    "BaseEnv",
    "CooperativeNavigation",
    "DifferentialGame",
    "DifferentialGame3",
    "DifferentialGame4",
    "DifferentialGame5",
    "HeterogeneousAgentsNavigation",
    "HeterogeneousTargetsNavigation",
    "MorePenaltyNavigation",
    "MpeEnv",
    "MpeTaskSpec",
    "NoiseConfig",
    "PredatorPrey",
    "SequentialNavigation",
    "StepResult",
    "dg_location_metric",
    "dg_reset",
    "dg_reward",
    "dg_step",
    "get_env",
    "get_env_class",
    "list_envs",
    "matrix_expected_q",
    "matrix_payoff",
    "matrix_threshold_sweep",
    "mpe_reset",
    "mpe_reward",
    "mpe_step",
    "pp_prey_policy",
]
