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

__all__ = ["list_agents", "get_agent_class", "get_agent"]

from maxmax.exceptions import InvalidConfigurationError
from maxmax.models.base import filter_kwargs
from maxmax.utils import _entry_points


def list_agents():
    """List available agent classes.

    Returns
    -------
    list:
        Classes of available learning agents.
    """
    return [e.load() for e in _entry_points(group="maxmax.models.agents")]


def get_agent_class(name):
    """Get class of agent from string.

    Arguments
    ---------
    name: str
        Name of the agent, e.g. 'mmq', 'iddpg' or 'hyddpg'.

    Returns
    -------
    BaseAgent:
        Class corresponding to the name.
    """
    try:
        return _entry_points(group="maxmax.models.agents")[name].load()
    except KeyError:
        raise InvalidConfigurationError(f"Unknown algorithm '{name}'")


def get_agent(name, *args, random_state=None, **kwargs):
    """Get an instance of an agent from a string.

    Arguments
    ---------
    name: str
        Name of the agent.
    *args:
        Arguments for the agent, state and action size.
    random_state: int, SeededRandomState
        Random state of the agent.
    **kwargs:
        Keyword arguments for the agent. Options the agent does not take are
        ignored, so one algorithm configuration fits every agent.

    Returns
    -------
    BaseAgent:
        Initialized instance of the agent.
    """
    agent_class = get_agent_class(name)
    return agent_class(
        *args, random_state=random_state, **filter_kwargs(agent_class, kwargs)
    )
