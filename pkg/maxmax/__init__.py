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

try:
    from maxmax._version import __version__
    from maxmax._version import __version_tuple__
except ImportError:
    __version__ = "0.0.0"
    __version_tuple__ = (0, 0, 0)

from maxmax.envs.utils import get_env  # noqa: E402
from maxmax.envs.utils import list_envs  # noqa: E402
from maxmax.models.agents.utils import get_agent  # noqa: E402
from maxmax.models.agents.utils import list_agents  # noqa: E402
from maxmax.settings import ExperimentSettings  # noqa: E402
from maxmax.settings import load_config  # noqa: E402
from maxmax.simulation.simulate import run_experiment  # noqa: E402
from maxmax.simulation.summary import summarize  # noqa: E402

__all__ = [
    "ExperimentSettings",
    "get_agent",
    "get_env",
    "list_agents",
    "list_envs",
    "load_config",
    "run_experiment",
    "summarize",
]
