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

__all__ = ["BaseForwardModel", "coverage_statistic", "sample_uniform_candidates"]

from abc import abstractmethod

import numpy as np

from maxmax.config import DEFAULT_LAYER_SIZES
from maxmax.config import DEFAULT_LEARNING_RATE
from maxmax.config import DEFAULT_TAU_LOWER
from maxmax.config import DEFAULT_TAU_UPPER
from maxmax.exceptions import InvalidArgumentError
from maxmax.exceptions import InvalidConfigurationError
from maxmax.exceptions import ShapeError
from maxmax.models.base import BaseModel
from maxmax.utils import get_random_state


def _clamp(values, low, high):
    if low is None and high is None:
        return values
    return np.clip(values, low, high)


def sample_uniform_candidates(
    lower, upper, next_states, n_samples, rng=None, low=None, high=None
):
    """Uniform candidate next states inside per-dimension bounds.

    Arguments
    ---------
    lower, upper: np.ndarray
        Bounds of shape (n, state_dim), lower <= upper.
    next_states: np.ndarray
        Observed next states of shape (n, state_dim), appended last.
    n_samples: int
        Number of draws per row.
    rng: int, SeededRandomState
        Random source of the draws.
    low, high: np.ndarray
        Optional valid state box; draws are clamped into it.

    Returns
    -------
    np.ndarray:
        Candidates of shape (n, n_samples + 1, state_dim).
    """
    if n_samples < 0:
        raise InvalidArgumentError(f"Number of samples should be >= 0: {n_samples}")
    n, dim = next_states.shape
    random_state = get_random_state(rng)
    draws = random_state.uniform(size=(n, n_samples, dim))
    samples = lower[:, None, :] + draws * (upper - lower)[:, None, :]
    samples = _clamp(samples, low, high)
    return np.concatenate([samples, next_states[:, None, :]], axis=1)


def coverage_statistic(lower, upper, next_states):
    """Percentage of next-state coordinates inside their predicted bounds."""
    next_states = np.asarray(next_states, dtype=float)
    if next_states.size == 0:
        raise InvalidArgumentError("Coverage needs at least one transition")
    if lower.shape != next_states.shape or upper.shape != next_states.shape:
        raise ShapeError("Bounds and next states should share one shape")
    inside = (lower <= next_states) & (next_states <= upper)
    return 100.0 * float(np.count_nonzero(inside)) / next_states.size


class BaseForwardModel(BaseModel):
    """Abstract model of where an agent's action can lead.

    A forward model learns, for a state and one agent's own action, a region of
    plausible next states and draws candidate next states from it.
    """

    name = "base-forward"

    def __init__(
        self,
        state_dim,
        action_dim,
        layer_sizes=DEFAULT_LAYER_SIZES,
        learning_rate=DEFAULT_LEARNING_RATE,
        tau_lower=DEFAULT_TAU_LOWER,
        tau_upper=DEFAULT_TAU_UPPER,
        random_state=None,
    ):
        if not 0.0 < tau_lower < tau_upper < 1.0:
            raise InvalidConfigurationError(
                f"Quantile levels should satisfy 0 < {tau_lower} < {tau_upper} < 1"
            )
        self.state_dim = int(state_dim)
        self.action_dim = int(action_dim)
        self.layer_sizes = tuple(layer_sizes)
        self.learning_rate = learning_rate
        self.tau_lower = tau_lower
        self.tau_upper = tau_upper
        self._random_state = get_random_state(random_state)

    def _inputs(self, states, actions):
        states = np.atleast_2d(np.asarray(states, dtype=float))
        actions = np.asarray(actions, dtype=float).reshape(states.shape[0], -1)
        return np.concatenate([states, actions], axis=1)

    @abstractmethod
    def fit(self, batch):
        """One optimizer step on a batch; returns the losses."""
        raise NotImplementedError

    @abstractmethod
    def bounds(self, states, actions):
        """Per-dimension lower and upper bounds with lower <= upper."""
        raise NotImplementedError

    @abstractmethod
    def sample_candidates(
        self, states, actions, next_states, n_samples, rng=None, low=None, high=None
    ):
        raise NotImplementedError

    @abstractmethod
    def named_parameters(self):
        raise NotImplementedError

    @abstractmethod
    def load_named_parameters(self, named):
        raise NotImplementedError

    def coverage(self, batch):
        lower, upper = self.bounds(batch.states, batch.actions)
        return coverage_statistic(lower, upper, batch.next_states)

    def bound_width(self, batch):
        lower, upper = self.bounds(batch.states, batch.actions)
        return float(np.mean(upper - lower))
