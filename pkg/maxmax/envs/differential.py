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

"""N-agent differential game.

Each agent controls one coordinate on [-1, 1]. The shared reward depends only
on the location metric of the joint position: a narrow, tall peak at the
origin and a wide, low ring near l = 0.8.
"""

__all__ = [
    "DifferentialGame",
    "DifferentialGame3",
    "DifferentialGame4",
    "DifferentialGame5",
    "dg_location_metric",
    "dg_reset",
    "dg_reward",
    "dg_step",
]

import numpy as np

from maxmax.config import DEFAULT_EPISODE_LENGTH
from maxmax.envs.base import BaseEnv
from maxmax.envs.base import NoiseConfig
from maxmax.envs.base import StepResult
from maxmax.exceptions import InvalidArgumentError
from maxmax.exceptions import InvalidConfigurationError
from maxmax.utils import get_random_state

DG_PEAK_HEIGHT = 0.5
DG_RING_HEIGHT = 0.15
DG_PEAK_WIDTH_PER_AGENT = 0.13
DG_STEP_SIZE = 0.1


def dg_location_metric(positions):
    positions = np.asarray(positions, dtype=float)
    return float(np.sqrt(2.0 / positions.size * np.sum(positions**2)))


def dg_reward(l, n_agents):
    """Shared reward at location metric l for N agents."""
    if l < 0:
        raise InvalidArgumentError(f"Location metric should be nonnegative: {l}")
    m = DG_PEAK_WIDTH_PER_AGENT * (n_agents - 1)
    if l <= m:
        return DG_PEAK_HEIGHT * (np.cos(l * np.pi / m) + 1.0)
    if l <= 0.6:
        return 0.0
    if l <= 1.0:
        return DG_RING_HEIGHT * (np.cos(5.0 * np.pi * (l - 0.8)) + 1.0)
    return 0.0


def dg_reset(n_agents, rng=None):
    if n_agents < 2:
        raise InvalidConfigurationError("The differential game needs at least 2 agents")
    return get_random_state(rng).uniform(-1.0, 1.0, size=n_agents)


def dg_step(
    state,
    joint_action,
    noise=None,
    rng=None,
    t=None,
    episode_length=DEFAULT_EPISODE_LENGTH,
):
    """Move every agent by a tenth of its action and score the next state.

    Arguments
    ---------
    state: np.ndarray
        Agent positions.
    joint_action: np.ndarray
        One scalar action per agent, clamped to [-1, 1].
    noise: NoiseConfig
        Optional transition and reward noise.
    rng: SeededRandomState
        Source of the noise draws.
    t: int
        Index of the step being taken, used for the episode cutoff.
    episode_length: int
        Episode length.

    Returns
    -------
    StepResult:
        Next positions, reward and cutoff flag.
    """
    noise = NoiseConfig() if noise is None else noise
    state = np.asarray(state, dtype=float)
    action = np.clip(np.asarray(joint_action, dtype=float).reshape(state.shape), -1, 1)

    displacement = DG_STEP_SIZE * action
    if noise.sigma_s > 0:
        displacement = displacement + get_random_state(rng).normal(
            0.0, noise.sigma_s, size=state.shape
        )
    next_state = np.clip(state + displacement, -1.0, 1.0)

    reward = dg_reward(dg_location_metric(next_state), state.size)
    if noise.sigma_r > 0:
        reward += get_random_state(rng).normal(0.0, noise.sigma_r)

    done = t is not None and t >= episode_length
    return StepResult(next_state=next_state, reward=float(reward), done=done)


class DifferentialGame(BaseEnv):
    """Differential game with N single-coordinate agents."""

    name = "dg"
    label = "Differential game"

    def __init__(
        self,
        n_agents=2,
        sigma_s=0.0,
        sigma_r=0.0,
        episode_length=DEFAULT_EPISODE_LENGTH,
        random_state=None,
    ):
        if n_agents < 2:
            raise InvalidConfigurationError(
                "The differential game needs at least 2 agents"
            )
        super().__init__(
            n_agents=n_agents,
            episode_length=episode_length,
            random_state=random_state,
        )
        self.sigma_s = sigma_s
        self.sigma_r = sigma_r
        self.noise = NoiseConfig(sigma_s=sigma_s, sigma_r=sigma_r)

    @property
    def state_dim(self):
        return self.n_agents

    @property
    def action_dim(self):
        return 1

    def state_bounds(self):
        return np.full(self.n_agents, -1.0), np.full(self.n_agents, 1.0)

    def location(self):
        return dg_location_metric(self.state)

    def _reset(self):
        return dg_reset(self.n_agents, self._random_state)

    def _step(self, state, joint_action, t):
        return dg_step(
            state,
            joint_action.ravel(),
            noise=self.noise,
            rng=self._random_state,
            t=t,
            episode_length=self.episode_length,
        )


class _SizedDifferentialGame(DifferentialGame):
    default_n_agents = 2

    def __init__(
        self,
        n_agents=None,
        sigma_s=0.0,
        sigma_r=0.0,
        episode_length=DEFAULT_EPISODE_LENGTH,
        random_state=None,
    ):
        super().__init__(
            n_agents=self.default_n_agents if n_agents is None else n_agents,
            sigma_s=sigma_s,
            sigma_r=sigma_r,
            episode_length=episode_length,
            random_state=random_state,
        )


class DifferentialGame3(_SizedDifferentialGame):
    name = "dg3"
    label = "Differential game, 3 agents"
    default_n_agents = 3


class DifferentialGame4(_SizedDifferentialGame):
    name = "dg4"
    label = "Differential game, 4 agents"
    default_n_agents = 4


class DifferentialGame5(_SizedDifferentialGame):
    name = "dg5"
    label = "Differential game, 5 agents"
    default_n_agents = 5
