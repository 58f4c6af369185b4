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

__all__ = ["Batch", "ReplayBuffer", "Transition"]

from dataclasses import dataclass

import numpy as np

from maxmax.config import DEFAULT_BUFFER_SIZE
from maxmax.exceptions import InvalidArgumentError
from maxmax.exceptions import ShapeError
from maxmax.utils import check_finite
from maxmax.utils import get_random_state


@dataclass
class Transition:
    """One experience of a single agent: state, own action, reward, next state."""

    s: np.ndarray
    a: np.ndarray
    r: float
    s_next: np.ndarray


@dataclass
class Batch:
    """Transitions stacked row-wise."""

    states: np.ndarray
    actions: np.ndarray
    rewards: np.ndarray
    next_states: np.ndarray

    def __len__(self):
        return self.states.shape[0]

    @classmethod
    def from_transitions(cls, transitions):
        transitions = list(transitions)
        if not transitions:
            raise InvalidArgumentError("Cannot stack an empty list of transitions")
        return cls(
            states=np.stack([np.asarray(t.s, dtype=float) for t in transitions]),
            actions=np.stack(
                [np.atleast_1d(np.asarray(t.a, dtype=float)) for t in transitions]
            ),
            rewards=np.array([t.r for t in transitions], dtype=float),
            next_states=np.stack(
                [np.asarray(t.s_next, dtype=float) for t in transitions]
            ),
        )


class ReplayBuffer:
    """Fixed-capacity ring buffer with uniform sampling.

    Arguments
    ---------
    state_dim: int
        Size of the state vector.
    action_dim: int
        Size of the agent's own action.
    capacity: int
        Maximum number of stored transitions. The oldest are overwritten.
    random_state: int, SeededRandomState
        Random state used for sampling.
    """

    def __init__(
        self, state_dim, action_dim, capacity=DEFAULT_BUFFER_SIZE, random_state=None
    ):
        if capacity < 1:
            raise InvalidArgumentError(f"Capacity should be positive: {capacity}")
        self.state_dim = int(state_dim)
        self.action_dim = int(action_dim)
        self.capacity = int(capacity)
        self._random_state = get_random_state(random_state)
        self.n_inserted = 0
        self._states = None

    def _allocate(self):
        self._states = np.zeros((self.capacity, self.state_dim))
        self._actions = np.zeros((self.capacity, self.action_dim))
        self._rewards = np.zeros(self.capacity)
        self._next_states = np.zeros((self.capacity, self.state_dim))

    def __len__(self):
        return min(self.n_inserted, self.capacity)

    def add(self, s, a, r, s_next):
        s = np.asarray(s, dtype=float)
        a = np.atleast_1d(np.asarray(a, dtype=float))
        s_next = np.asarray(s_next, dtype=float)
        if s.shape != (self.state_dim,) or s_next.shape != (self.state_dim,):
            raise ShapeError(f"States should have size {self.state_dim}")
        if a.shape != (self.action_dim,):
            raise ShapeError(f"Actions should have size {self.action_dim}")
        check_finite(r, "reward")

        if self._states is None:
            self._allocate()
        k = self.n_inserted % self.capacity
        self._states[k] = s
        self._actions[k] = a
        self._rewards[k] = r
        self._next_states[k] = s_next
        self.n_inserted += 1

    def sample(self, batch_size):
        """Draw batch_size transitions uniformly, with replacement."""
        if len(self) == 0:
            raise InvalidArgumentError("Cannot sample from an empty replay buffer")
        idx = self._random_state.randint(0, len(self), size=batch_size)
        return Batch(
            states=self._states[idx].copy(),
            actions=self._actions[idx].copy(),
            rewards=self._rewards[idx].copy(),
            next_states=self._next_states[idx].copy(),
        )
