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

from maxmax.models.agents.base import AgentNets
from maxmax.models.agents.base import BaseAgent
from maxmax.models.agents.hyddpg import HyDDPGAgent
from maxmax.models.agents.iddpg import IDDPGAgent
from maxmax.models.agents.mmq import MMQAgent
from maxmax.models.agents.utils import get_agent
from maxmax.models.agents.utils import get_agent_class
from maxmax.models.agents.utils import list_agents

__all__ = [
    "AgentNets",
    "BaseAgent",
    "HyDDPGAgent",
    "IDDPGAgent",
    "MMQAgent",
    "get_agent",
    "get_agent_class",
    "list_agents",
]
