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

"""Small deterministic two-agent MDPs with exact Bellman operators.

Rewards depend on the state and the next state only, R(s, s'). For agent i
the set S(s, a_i) holds every next state reachable from s when agent i plays
a_i and its partner plays anything.
"""

__all__ = [
    "FiniteJointMdp",
    "OperatorResult",
    "individual_fixed_point",
    "joint_value_iteration",
    "matrix_game_mdp",
    "next_state_sets",
    "random_joint_mdp",
    "set_operator",
]

from dataclasses import dataclass

import numpy as np

from maxmax.config import MATRIX_PAYOFF
from maxmax.exceptions import InvalidConfigurationError
from maxmax.exceptions import NumericFailureError
from maxmax.utils import get_random_state

MAX_SWEEPS = 100000
SWEEP_TOL = 1e-12


@dataclass
class FiniteJointMdp:
    """Deterministic two-agent MDP.

    Attributes
    ----------
    transitions: np.ndarray
        Integer table f(s, a1, a2) of shape (n_states, n_actions_1, n_actions_2).
    rewards: np.ndarray
        Reward table R(s, s') of shape (n_states, n_states).
    gamma: float
        Discount factor in [0, 1).
    """

    transitions: np.ndarray
    rewards: np.ndarray
    gamma: float

    def __post_init__(self):
        self.transitions = np.asarray(self.transitions, dtype=int)
        self.rewards = np.asarray(self.rewards, dtype=float)
        if self.transitions.ndim != 3:
            raise InvalidConfigurationError("Transition table should be 3-dimensional")
        n = self.transitions.shape[0]
        if self.rewards.shape != (n, n):
            raise InvalidConfigurationError("Reward table should be square")
        if self.transitions.min() < 0 or self.transitions.max() >= n:
            raise InvalidConfigurationError("Transitions should be state indices")
        if not np.all(np.isfinite(self.rewards)):
            raise InvalidConfigurationError("Rewards should be finite")
        if not 0.0 <= self.gamma < 1.0:
            raise InvalidConfigurationError(f"gamma should be in [0, 1): {self.gamma}")

    @property
    def n_states(self):
        return self.transitions.shape[0]

    @property
    def n_actions(self):
        return self.transitions.shape[1:]

    def own_transitions(self, agent):
        """Transition table with the given agent's action on axis 1."""
        if agent == 0:
            return self.transitions
        if agent == 1:
            return np.swapaxes(self.transitions, 1, 2)
        raise InvalidConfigurationError(f"Agent index should be 0 or 1: {agent}")


@dataclass
class OperatorResult:
    """Two Q-tables before and after one application of a set operator."""

    q1: np.ndarray
    q2: np.ndarray
    tq1: np.ndarray
    tq2: np.ndarray

    @property
    def distance_before(self):
        return float(np.max(np.abs(self.q1 - self.q2)))

    @property
    def distance_after(self):
        return float(np.max(np.abs(self.tq1 - self.tq2)))

    @property
    def ratio(self):
        if self.distance_before == 0:
            return None
        return self.distance_after / self.distance_before


def random_joint_mdp(n_states, n_actions=(2, 2), gamma=0.9, rng=None):
    """Random deterministic MDP with uniform rewards in [-1, 1]."""
    random_state = get_random_state(rng)
    transitions = random_state.randint(0, n_states, size=(n_states, *n_actions))
    rewards = random_state.uniform(-1.0, 1.0, size=(n_states, n_states))
    return FiniteJointMdp(transitions=transitions, rewards=rewards, gamma=gamma)


def matrix_game_mdp(gamma=0.0, payoff=MATRIX_PAYOFF):
    """Repeated matrix game as a joint MDP.

    State 0 is the start; state 1 + 3 a1 + a2 records the last joint action
    and pays its payoff on arrival.
    """
    payoff = np.asarray(payoff, dtype=float)
    n_a = payoff.shape[0]
    n_states = 1 + n_a * n_a
    joint = 1 + np.arange(n_a)[:, None] * n_a + np.arange(n_a)[None, :]
    transitions = np.broadcast_to(joint, (n_states, n_a, n_a)).copy()
    rewards = np.tile(np.concatenate([[0.0], payoff.ravel()]), (n_states, 1))
    return FiniteJointMdp(transitions=transitions, rewards=rewards, gamma=gamma)


def next_state_sets(mdp, agent):
    """Boolean mask of shape (n_states, n_own_actions, n_states).

    Entry (s, a_i, s') is True when s' is reachable from s under a_i.
    """
    own = mdp.own_transitions(agent)
    n_states, n_own, _ = own.shape
    mask = np.zeros((n_states, n_own, n_states), dtype=bool)
    for s in range(n_states):
        for a in range(n_own):
            mask[s, a, np.unique(own[s, a])] = True
    return mask


def _iterate(operator, q, max_sweeps=MAX_SWEEPS, tol=SWEEP_TOL):
    for _ in range(max_sweeps):
        q_new = operator(q)
        if np.max(np.abs(q_new - q)) < tol:
            return q_new
        q = q_new
    raise NumericFailureError(f"No convergence in {max_sweeps} sweeps")


def joint_value_iteration(mdp, max_sweeps=MAX_SWEEPS, tol=SWEEP_TOL):
    """Optimal joint action values Q*(s, a1, a2)."""
    s_idx = np.arange(mdp.n_states)[:, None, None]
    immediate = mdp.rewards[s_idx, mdp.transitions]

    def operator(q):
        v = q.reshape(mdp.n_states, -1).max(axis=1)
        return immediate + mdp.gamma * v[mdp.transitions]

    return _iterate(operator, np.zeros(mdp.transitions.shape), max_sweeps, tol)


def set_operator(mdp, q, subsets, select="max"):
    """Apply the individual Bellman operator over next-state subsets.

    (T Q)(s, a_i) = select over s' in subset(s, a_i) of R(s, s') + gamma max Q(s', .)

    Arguments
    ---------
    mdp: FiniteJointMdp
        The MDP.
    q: np.ndarray
        Individual table of shape (n_states, n_own_actions).
    subsets: np.ndarray
        Boolean mask (n_states, n_own_actions, n_states), nonempty per row.
    select: str
        "max" for the optimistic operator, "min" for the adversarial one.
    """
    v = q.max(axis=1)
    values = mdp.rewards[:, None, :] + mdp.gamma * v[None, None, :]
    if select == "max":
        return np.where(subsets, values, -np.inf).max(axis=2)
    if select == "min":
        return np.where(subsets, values, np.inf).min(axis=2)
    raise InvalidConfigurationError(f"Unknown selection '{select}'")


def individual_fixed_point(
    mdp, subsets, select="max", max_sweeps=MAX_SWEEPS, tol=SWEEP_TOL
):
    if not np.all(subsets.any(axis=2)):
        raise InvalidConfigurationError("Every next-state subset should be nonempty")
    q0 = np.zeros(subsets.shape[:2])
    return _iterate(
        lambda q: set_operator(mdp, q, subsets, select), q0, max_sweeps, tol
    )
