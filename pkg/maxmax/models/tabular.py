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

"""Tabular independent learners for the one-shot matrix game."""

__all__ = ["MatrixLearnResult", "TabularQ", "tabular_matrix_learn"]

from dataclasses import dataclass
from dataclasses import field
from typing import Optional

import numpy as np

from maxmax.config import MATRIX_ACTIONS
from maxmax.envs.matrix import matrix_payoff
from maxmax.exceptions import InvalidConfigurationError
from maxmax.utils import get_random_state

UPDATE_RULES = ("average", "optimistic-max")


@dataclass
class TabularQ:
    """Value table of one agent over the three matrix-game actions.

    With learning_rate None the step size is 1 / (n + 2) where n counts the
    updates already applied to the action. The initial value then acts as one
    pseudo observation and the average rule tracks the sample mean.
    """

    values: np.ndarray = field(default_factory=lambda: np.zeros(len(MATRIX_ACTIONS)))
    learning_rate: Optional[float] = None
    update_rule: str = "average"
    counts: np.ndarray = field(
        default_factory=lambda: np.zeros(len(MATRIX_ACTIONS), dtype=int)
    )

    def __post_init__(self):
        if self.update_rule not in UPDATE_RULES:
            raise InvalidConfigurationError(
                f"Unknown update rule '{self.update_rule}', expected {UPDATE_RULES}"
            )
        self.values = np.asarray(self.values, dtype=float).copy()
        if self.values.shape != (len(MATRIX_ACTIONS),):
            raise InvalidConfigurationError("A matrix-game table has 3 entries")

    def _step_size(self, action):
        if self.learning_rate is None:
            return 1.0 / (self.counts[action] + 2)
        return self.learning_rate

    def update(self, action, reward):
        """Move Q(action) toward the reward.

        The optimistic-max rule ignores rewards below the current value, so
        the table never decreases.
        """
        if self.update_rule == "optimistic-max" and reward < self.values[action]:
            return
        alpha = self._step_size(action)
        self.values[action] += alpha * (reward - self.values[action])
        self.counts[action] += 1

    def greedy(self, rng=None):
        """Best action, ties broken uniformly at random."""
        best = np.flatnonzero(self.values == self.values.max())
        if len(best) == 1:
            return int(best[0])
        return int(get_random_state(rng).choice(best))

    def act(self, exploration, rng=None):
        random_state = get_random_state(rng)
        if random_state.rand() < exploration:
            return int(random_state.randint(len(MATRIX_ACTIONS)))
        return self.greedy(random_state)


@dataclass
class MatrixLearnResult:
    tables: list
    joint_counts: np.ndarray
    greedy_joint: tuple

    @property
    def joint_frequencies(self):
        return self.joint_counts / self.joint_counts.sum()

    @property
    def greedy_return(self):
        return matrix_payoff(*self.greedy_joint)


def tabular_matrix_learn(
    update_rule,
    episodes,
    exploration,
    rng=None,
    learning_rate=None,
    initial_values=None,
):
    """Two independent tabular learners in repeated play of the matrix game.

    Arguments
    ---------
    update_rule: str
        "average" or "optimistic-max".
    episodes: int
        Number of one-shot games.
    exploration: float
        Probability that an agent plays uniformly at random.
    rng: int, SeededRandomState
        Random state of the run.
    learning_rate: float
        Constant step size, None for sample averaging.
    initial_values: array-like
        Initial tables, one row per agent.

    Returns
    -------
    MatrixLearnResult:
        Final tables, joint-action counts and the greedy joint action.
    """
    if episodes < 1:
        raise InvalidConfigurationError(f"episodes should be positive: {episodes}")
    if not 0.0 <= exploration <= 1.0:
        raise InvalidConfigurationError(
            f"exploration should be in [0, 1]: {exploration}"
        )
    random_state = get_random_state(rng)

    if initial_values is None:
        initial_values = np.zeros((2, len(MATRIX_ACTIONS)))
    tables = [
        TabularQ(
            values=initial_values[i],
            learning_rate=learning_rate,
            update_rule=update_rule,
        )
        for i in range(2)
    ]

    joint_counts = np.zeros((len(MATRIX_ACTIONS), len(MATRIX_ACTIONS)), dtype=int)
    for _ in range(episodes):
        a1 = tables[0].act(exploration, random_state)
        a2 = tables[1].act(exploration, random_state)
        reward = matrix_payoff(a1, a2)
        tables[0].update(a1, reward)
        tables[1].update(a2, reward)
        joint_counts[a1, a2] += 1

    greedy_joint = tuple(
        MATRIX_ACTIONS[table.greedy(random_state)] for table in tables
    )
    return MatrixLearnResult(
        tables=tables, joint_counts=joint_counts, greedy_joint=greedy_joint
    )
