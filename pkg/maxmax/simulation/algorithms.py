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

from maxmax.config import EXIT_SUCCESS
from maxmax.envs.utils import list_envs
from maxmax.models.agents.utils import list_agents
from maxmax.models.forward.utils import list_forward_models


def _format_algorithm(values, name, description):
    s = f"  {name: <20}Available {description}:\n\n"

    result = []
    for x in values:
        result.append(" " * 22 + f"{x.name: <18}{getattr(x, 'label', '')}".rstrip())

    s += "\n".join(result)
    s += "\n\n"
    return s


def cli_algorithms(argv):  # noqa
    s = "Available environments and learners of MaxMax. \n\n"

    s += _format_algorithm(
        values=list_envs(), name="envs", description="environments"
    )
    s += _format_algorithm(
        values=list_agents(), name="agents", description="learning agents"
    )
    s += _format_algorithm(
        values=list_forward_models(),
        name="forward_models",
        description="next-state models of MaxMax agents",
    )

    print(s)
    return EXIT_SUCCESS
