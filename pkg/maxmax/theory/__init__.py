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

from maxmax.theory.checks import alignment_check
from maxmax.theory.checks import contraction_check
from maxmax.theory.checks import epsilon_gap_experiment
from maxmax.theory.checks import mc_min_distance_experiment
from maxmax.theory.checks import run_theory_suite
from maxmax.theory.checks import worst_case_gap
from maxmax.theory.mdp import FiniteJointMdp
from maxmax.theory.mdp import OperatorResult
from maxmax.theory.mdp import matrix_game_mdp
from maxmax.theory.mdp import random_joint_mdp

__all__ = [
    "FiniteJointMdp",
    "OperatorResult",
    "alignment_check",
    "contraction_check",
    "epsilon_gap_experiment",
    "matrix_game_mdp",
    "mc_min_distance_experiment",
    "random_joint_mdp",
    "run_theory_suite",
    "worst_case_gap",
]
