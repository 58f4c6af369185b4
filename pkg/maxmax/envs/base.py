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

__all__ = ["BaseEnv", "NoiseConfig", "StepResult", "clip_joint_action"]

from abc import abstractmethod
from dataclasses import dataclass

import numpy as np

from maxmax.config import ACTION_HIGH
from maxmax.config import ACTION_LOW
from maxmax.config import DEFAULT_EPISODE_LENGTH
from maxmax.exceptions import InvalidConfigurationError
from maxmax.exceptions import ShapeError
from maxmax.models.base import BaseModel
from maxmax.utils import get_random_state


@dataclass
class StepResult:
    """Outcome of one joint step: next state, shared reward, cutoff flag."""

    next_state: np.ndarray
    reward: float
    done: bool = False


@dataclass(frozen=True)
class NoiseConfig:
    """Gaussian noise on state transitions and rewards."""

    sigma_s: float = 0.0
    sigma_r: float = 0.0

    def __post_init__(self):
        if self.sigma_s < 0 or self.sigma_r < 0:
            raise InvalidConfigurationError("Noise levels should be nonnegative")


def clip_joint_action(joint_action, n_agents, action_dim):
    """Stack the per-agent actions and clamp them to the action box."""
    joint_action = np.asarray(joint_action, dtype=float)
    try:
        joint_action = joint_action.reshape(n_agents, action_dim)
    except ValueError:
        raise ShapeError(
            f"Expected {n_agents} actions of size {action_dim}, "
            f"got shape {joint_action.shape}"
        )
    return np.clip(joint_action, ACTION_LOW, ACTION_HIGH)


class BaseEnv(BaseModel):
    """Abstract cooperative environment with a fully observed global state.

    All agents observe the same state vector and receive the same reward.
    Episodes end only at the time limit.
    """

    name = "base-env"
    label = "Base environment"

    def __init__(
        self, n_agents=2, episode_length=DEFAULT_EPISODE_LENGTH, random_state=None
    ):
        if n_agents < 1:
            raise InvalidConfigurationError(f"n_agents should be positive: {n_agents}")
        if episode_length < 1:
            raise InvalidConfigurationError(
                f"episode_length should be positive: {episode_length}"
            )
        self.n_agents = int(n_agents)
        self.episode_length = int(episode_length)
        self._random_state = get_random_state(random_state)
        self.state = None
        self.t = 0

    @property
    @abstractmethod
    def state_dim(self):
        raise NotImplementedError

    @property
    @abstractmethod
    def action_dim(self):
        raise NotImplementedError

    @abstractmethod
    def state_bounds(self):
        """Lower and upper corner of the valid state box."""
        raise NotImplementedError

    @abstractmethod
    def _reset(self):
        raise NotImplementedError

    @abstractmethod
    def _step(self, state, joint_action, t):
        raise NotImplementedError

    def reset(self):
        """Start a new episode and return the initial state."""
        self.t = 0
        self.state = self._reset()
        return self.state.copy()

    def step(self, joint_action):
        if self.state is None:
            raise RuntimeError("Call reset() before step().")
        joint_action = clip_joint_action(joint_action, self.n_agents, self.action_dim)
        self.t += 1
        result = self._step(self.state, joint_action, self.t)
        self.state = result.next_state.copy()
        return result
