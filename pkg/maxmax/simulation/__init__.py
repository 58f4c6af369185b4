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

from maxmax.simulation.checkpoint import load_checkpoint
from maxmax.simulation.checkpoint import save_checkpoint
from maxmax.simulation.evaluate import EvaluationResult
from maxmax.simulation.evaluate import evaluate_agents
from maxmax.simulation.experiment import ExperimentFile
from maxmax.simulation.simulate import Simulate
from maxmax.simulation.simulate import run_experiment
from maxmax.simulation.simulate import run_seed
from maxmax.simulation.summary import RunRecord
from maxmax.simulation.summary import SummaryTable
from maxmax.simulation.summary import summarize

__all__ = [
    "EvaluationResult",
    "ExperimentFile",
    "RunRecord",
    "Simulate",
    "SummaryTable",
    "evaluate_agents",
    "load_checkpoint",
    "run_experiment",
    "run_seed",
    "save_checkpoint",
    "summarize",
]
