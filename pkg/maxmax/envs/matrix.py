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

"""One-shot cooperative matrix game with a shadowed optimum.

The joint action (A, A) pays +3 but A against anything else pays -6, so an
agent averaging over an exploring partner prefers the safe actions B and C.
"""

__all__ = [
    "matrix_action_index",
    "matrix_expected_q",
    "matrix_greedy_actions",
    "matrix_payoff",
    "matrix_threshold_sweep",
]

from fractions import Fraction

import numpy as np
import pandas as pd

from maxmax.config import MATRIX_ACTIONS
from maxmax.config import MATRIX_PAYOFF
from maxmax.exceptions import InvalidConfigurationError


def matrix_action_index(action):
    """Index of an action given as 'A'/'B'/'C' or 0/1/2."""
    if isinstance(action, str):
        try:
            return MATRIX_ACTIONS.index(action.upper())
        except ValueError:
            raise InvalidConfigurationError(f"Unknown matrix action '{action}'")
    if isinstance(action, (int, np.integer)) and 0 <= action < len(MATRIX_ACTIONS):
        return int(action)
    raise InvalidConfigurationError(f"Unknown matrix action {action!r}")


def matrix_payoff(a1, a2):
    return MATRIX_PAYOFF[matrix_action_index(a1)][matrix_action_index(a2)]


def matrix_expected_q(payoff, pi_other):
    """Expected payoff of each own action against the partner's policy.

    Exact arithmetic is kept when pi_other holds Fractions.

    Arguments
    ---------
    payoff: array-like
        Square payoff matrix, rows are own actions.
    pi_other: array-like
        Distribution of the partner over its actions.

    Returns
    -------
    np.ndarray:
        Q(a) = sum_b payoff(a, b) pi_other(b).
    """
    pi_other = list(pi_other)
    if any(p < 0 for p in pi_other) or abs(float(sum(pi_other)) - 1.0) > 1e-9:
        raise InvalidConfigurationError(
            f"Partner policy should be a distribution, got {pi_other}"
        )
    if any(len(row) != len(pi_other) for row in payoff):
        raise InvalidConfigurationError("Payoff matrix does not match the policy")

    values = []
    for row in payoff:
        total = 0
        for r, p in zip(row, pi_other):
            total += Fraction(r) * p if isinstance(p, Fraction) else r * p
        values.append(total)
    if all(isinstance(v, Fraction) for v in values):
        return np.array(values, dtype=object)
    return np.array(values, dtype=float)


def matrix_greedy_actions(q_values, tol=0):
    """Actions whose value is within tol of the best."""
    best = max(q_values)
    return tuple(
        MATRIX_ACTIONS[k] for k, q in enumerate(q_values) if best - q <= tol
    )


def matrix_threshold_sweep(n_points=21, payoff=MATRIX_PAYOFF):
    """Expected values as the partner's probability of A sweeps [0, 1].

    B and C share the remaining probability evenly. Probabilities are exact
    fractions k / (n_points - 1).

    Returns
    -------
    pd.DataFrame:
        Columns pi_A, Q_A, Q_B, Q_C and greedy.
    """
    if n_points < 2:
        raise InvalidConfigurationError("The sweep needs at least 2 points")

    rows = []
    for k in range(n_points):
        p_a = Fraction(k, n_points - 1)
        rest = (1 - p_a) / 2
        q = matrix_expected_q(payoff, [p_a, rest, rest])
        rows.append(
            {
                "pi_A": p_a,
                "Q_A": q[0],
                "Q_B": q[1],
                "Q_C": q[2],
                "greedy": ",".join(matrix_greedy_actions(q)),
            }
        )
    return pd.DataFrame(rows)
