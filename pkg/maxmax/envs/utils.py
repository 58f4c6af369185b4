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

__all__ = ["get_env", "get_env_class", "list_envs"]

from maxmax.exceptions import InvalidConfigurationError
from maxmax.models.base import filter_kwargs
from maxmax.utils import _entry_points


def list_envs():
    """List available environment classes.

    Returns
    -------
    list:
        Classes of available environments.
    """
    return [e.load() for e in _entry_points(group="maxmax.envs")]


def get_env_class(name):
    """Get class of environment from string.

    Arguments
    ---------
    name: str
        Name of the environment, e.g. 'dg', 'cn' or 'pp'.

    Returns
    -------
    BaseEnv:
        Class corresponding to the name.
    """
    try:
        return _entry_points(group="maxmax.envs")[name].load()
    except KeyError:
        raise InvalidConfigurationError(f"Unknown environment '{name}'")


def get_env(name, random_state=None, **kwargs):
    """Get an instance of an environment from a string.

    Keyword arguments that are None are left to the environment default.
    Options the environment does not support are an error.

    Arguments
    ---------
    name: str
        Name of the environment.
    random_state: int, SeededRandomState
        Random state of the environment.
    **kwargs:
        Keyword arguments for the environment.

    Returns
    -------
    BaseEnv:
        Initialized environment.
    """
    env_class = get_env_class(name)
    env_kwargs = filter_kwargs(env_class, kwargs)
    unsupported = [
        k for k, v in kwargs.items() if v is not None and k not in env_kwargs
    ]
    if unsupported:
        raise InvalidConfigurationError(
            f"Environment '{name}' does not support {', '.join(sorted(unsupported))}"
        )
    return env_class(random_state=random_state, **env_kwargs)
