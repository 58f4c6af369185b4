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

"""Numerical checks of the convergence and alignment properties."""

__all__ = [
    "AlignmentResult",
    "CheckOutcome",
    "ContractionResult",
    "MinDistanceResult",
    "alignment_check",
    "contraction_check",
    "epsilon_gap_experiment",
    "mc_min_distance_experiment",
    "run_theory_suite",
    "worst_case_gap",
]

import logging
from dataclasses import dataclass
from dataclasses import field

import numpy as np
import pandas as pd

from maxmax.exceptions import InvalidConfigurationError
from maxmax.exceptions import TheoryCheckError
from maxmax.theory.mdp import OperatorResult
from maxmax.theory.mdp import individual_fixed_point
from maxmax.theory.mdp import joint_value_iteration
from maxmax.theory.mdp import matrix_game_mdp
from maxmax.theory.mdp import next_state_sets
from maxmax.theory.mdp import random_joint_mdp
from maxmax.theory.mdp import set_operator
from maxmax.utils import get_random_state

CONTRACTION_TOL = 1e-12
ALIGNMENT_TOL = 1e-8
MONOTONE_TOL = 1e-9
BOUNDARY_FRACTION = 0.99
MC_CHUNK = 10000


@dataclass
class MinDistanceResult:
    """Monte-Carlo estimate of the expected distance to the nearest sample."""

    u: float
    c: float
    n_samples: int
    trials: int
    estimate: float
    std_error: float

    @property
    def closed_form(self):
        m = self.n_samples
        return self.u / (m + 1) * (1.0 + (abs(self.c) / self.u) ** (m + 1))

    @property
    def bound(self):
        return 2.0 * self.u / (self.n_samples + 1)

    @property
    def below_bound(self):
        return self.estimate < self.bound

    @property
    def matches_closed_form(self):
        return abs(self.estimate - self.closed_form) <= 3.0 * self.std_error

    @property
    def passed(self):
        # the bound is tight at |c| = u
        if abs(self.c) > BOUNDARY_FRACTION * self.u:
            return self.matches_closed_form
        return self.below_bound and self.matches_closed_form


def mc_min_distance_experiment(u, c, M, trials, rng=None, check=False):
    """Expected distance from c to the nearest of M uniform draws on [-u, u].

    Arguments
    ---------
    u: float
        Half width of the sampling interval.
    c: float
        Point to approach, |c| <= u.
    M: int
        Number of draws per trial.
    trials: int
        Number of Monte-Carlo trials.
    rng: int, SeededRandomState
        Random state.
    check: bool
        Raise TheoryCheckError when the estimate breaks the bound or
        disagrees with the closed form.

    Returns
    -------
    MinDistanceResult:
        Estimate, standard error and the reference values.
    """
    if u <= 0 or abs(c) > u or M < 1 or trials < 1:
        raise InvalidConfigurationError(
            f"Invalid parameters u={u}, c={c}, M={M}, trials={trials}"
        )
    random_state = get_random_state(rng)

    distances = []
    remaining = trials
    while remaining > 0:
        n = min(remaining, MC_CHUNK)
        draws = random_state.uniform(-u, u, size=(n, M))
        distances.append(np.min(np.abs(draws - c), axis=1))
        remaining -= n
    distances = np.concatenate(distances)

    std_error = float(distances.std(ddof=1) / np.sqrt(trials)) if trials > 1 else 0.0
    result = MinDistanceResult(
        u=u,
        c=c,
        n_samples=M,
        trials=trials,
        estimate=float(distances.mean()),
        std_error=std_error,
    )
    logging.debug(
        f"min distance u={u} c={c} M={M}: {result.estimate:.5f} "
        f"(closed form {result.closed_form:.5f}, bound {result.bound:.5f})"
    )
    if check and not result.passed:
        raise TheoryCheckError(
            f"Nearest-sample distance check failed for u={u}, c={c}, M={M}: "
            f"estimate {result.estimate}, closed form {result.closed_form}, "
            f"bound {result.bound}"
        )
    return result


@dataclass
class ContractionResult:
    gamma: float
    ratios: list = field(default_factory=list)

    @property
    def max_ratio(self):
        return max(self.ratios) if self.ratios else 0.0

    @property
    def passed(self):
        return self.max_ratio <= self.gamma + CONTRACTION_TOL


def _draw_subsets(full, subset_rule, random_state):
    if callable(subset_rule):
        return np.asarray(subset_rule(full, random_state), dtype=bool)
    if subset_rule == "full":
        return full.copy()

    subsets = np.zeros_like(full)
    for s in range(full.shape[0]):
        for a in range(full.shape[1]):
            members = np.flatnonzero(full[s, a])
            if subset_rule == "singleton":
                chosen = [random_state.choice(members)]
            elif subset_rule == "random":
                keep = random_state.rand(len(members)) < 0.5
                keep[random_state.randint(len(members))] = True
                chosen = members[keep]
            else:
                raise InvalidConfigurationError(f"Unknown subset rule '{subset_rule}'")
            subsets[s, a, chosen] = True
    return subsets


def contraction_check(mdp, subset_rule="random", trials=100, rng=None, agent=0):
    """Largest observed Lipschitz ratio of the set operator in sup-norm.

    The subsets are drawn once and held fixed over all trials.

    Returns
    -------
    ContractionResult:
        Ratios of every trial with distinct tables.
    """
    random_state = get_random_state(rng)
    subsets = _draw_subsets(next_state_sets(mdp, agent), subset_rule, random_state)
    if not np.all(subsets.any(axis=2)):
        raise InvalidConfigurationError("Every next-state subset should be nonempty")

    result = ContractionResult(gamma=mdp.gamma)
    shape = subsets.shape[:2]
    for _ in range(trials):
        q1 = random_state.normal(0.0, 10.0, size=shape)
        q2 = random_state.normal(0.0, 10.0, size=shape)
        op = OperatorResult(
            q1=q1,
            q2=q2,
            tq1=set_operator(mdp, q1, subsets),
            tq2=set_operator(mdp, q2, subsets),
        )
        if op.ratio is not None:
            result.ratios.append(op.ratio)
    return result


@dataclass
class AlignmentResult:
    q_joint: np.ndarray
    q_individual: list
    gap: float

    @property
    def passed(self):
        return self.gap <= ALIGNMENT_TOL


def alignment_check(mdp, check=False):
    """Compare the individual optimistic fixed points with the joint optimum.

    With the exact reachable sets, max over a_i of each agent's fixed point
    should equal the best joint action value in every state.
    """
    q_joint = joint_value_iteration(mdp)
    v_joint = q_joint.reshape(mdp.n_states, -1).max(axis=1)

    q_individual = []
    gap = 0.0
    for agent in range(2):
        q_i = individual_fixed_point(mdp, next_state_sets(mdp, agent))
        q_individual.append(q_i)
        gap = max(gap, float(np.max(np.abs(q_i.max(axis=1) - v_joint))))

    result = AlignmentResult(q_joint=q_joint, q_individual=q_individual, gap=gap)
    if check and not result.passed:
        raise TheoryCheckError(f"Individual and joint optima differ by {gap}")
    return result


def _best_next_states(mdp, q_star, full):
    v = q_star.max(axis=1)
    values = mdp.rewards[:, None, :] + mdp.gamma * v[None, None, :]
    return np.argmax(np.where(full, values, -np.inf), axis=2)


def epsilon_gap_experiment(mdp, epsilon_schedule, agent=0, check=False):
    """Value loss when the best next state may be swapped within distance eps.

    States sit on the integer line. For every (s, a_i) the selected next state
    may be replaced adversarially by any reachable state within eps of the
    best one; the gap is the sup-norm distance between the optimistic fixed
    point and the fixed point under that adversary.

    Returns
    -------
    pd.DataFrame:
        Columns epsilon and gap, in schedule order.
    """
    epsilons = [float(e) for e in epsilon_schedule]
    if any(e < 0 for e in epsilons):
        raise InvalidConfigurationError("Epsilon values should be nonnegative")

    full = next_state_sets(mdp, agent)
    q_star = individual_fixed_point(mdp, full)
    best = _best_next_states(mdp, q_star, full)
    positions = np.arange(mdp.n_states)

    rows = []
    for eps in epsilons:
        ball = np.abs(positions[None, None, :] - best[:, :, None]) <= eps
        q_eps = individual_fixed_point(mdp, full & ball, select="min")
        rows.append({"epsilon": eps, "gap": float(np.max(np.abs(q_star - q_eps)))})
    curve = pd.DataFrame(rows, columns=["epsilon", "gap"])

    if check:
        ordered = curve.sort_values("epsilon", ascending=False, kind="stable")
        if np.any(np.diff(ordered["gap"].to_numpy()) > MONOTONE_TOL):
            raise TheoryCheckError("The value gap grew while epsilon decreased")
        zero = curve.loc[curve["epsilon"] == 0.0, "gap"]
        if len(zero) and zero.max() > ALIGNMENT_TOL:
            raise TheoryCheckError("The value gap does not vanish at epsilon 0")
    return curve


def worst_case_gap(mdp, agent=0):
    """Gap when the adversary may pick any reachable next state."""
    full = next_state_sets(mdp, agent)
    q_star = individual_fixed_point(mdp, full)
    q_worst = individual_fixed_point(mdp, full, select="min")
    return float(np.max(np.abs(q_star - q_worst)))


@dataclass
class CheckOutcome:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)


def _min_distance_checks(random_state, trials):
    outcomes = []
    for M in (1, 5, 15, 50):
        for c in (0.0, 0.5, 0.9):
            result = mc_min_distance_experiment(1.0, c, M, trials, random_state)
            outcomes.append(
                CheckOutcome(
                    name=f"min-distance M={M} c={c}",
                    passed=result.passed,
                    detail={
                        "estimate": result.estimate,
                        "std_error": result.std_error,
                        "closed_form": result.closed_form,
                        "bound": result.bound,
                    },
                )
            )
    return outcomes


def run_theory_suite(seed=0, quick=False):
    """Run every check and return one outcome per check.

    Arguments
    ---------
    seed: int
        Seed of all random draws.
    quick: bool
        Fewer Monte-Carlo trials and MDPs.

    Returns
    -------
    list of CheckOutcome:
        Named pass or fail results with their raw numbers.
    """
    random_state = get_random_state(seed)
    trials = 20000 if quick else 100000
    n_mdps = 5 if quick else 20

    outcomes = _min_distance_checks(random_state, trials)

    gammas = (0.0, 0.5, 0.9, 0.99)
    max_ratio = 0.0
    contraction_ok = True
    for k in range(n_mdps):
        gamma = gammas[k % len(gammas)]
        mdp = random_joint_mdp(3 + k % 8, (2, 2), gamma, random_state)
        for rule in ("full", "random", "singleton"):
            result = contraction_check(mdp, rule, 100, random_state)
            contraction_ok = contraction_ok and result.passed
            if gamma > 0:
                max_ratio = max(max_ratio, result.max_ratio / gamma)
    outcomes.append(
        CheckOutcome(
            name="contraction",
            passed=contraction_ok,
            detail={"max_ratio_over_gamma": max_ratio},
        )
    )

    max_gap = 0.0
    for k in range(n_mdps):
        gamma = (0.5, 0.9, 0.99)[k % 3]
        mdp = random_joint_mdp(4 + k % 10, (2 + k % 3, 2), gamma, random_state)
        max_gap = max(max_gap, alignment_check(mdp).gap)
    outcomes.append(
        CheckOutcome(
            name="alignment",
            passed=max_gap <= ALIGNMENT_TOL,
            detail={"max_gap": max_gap},
        )
    )

    matrix = alignment_check(matrix_game_mdp(gamma=0.0))
    best_individual = float(matrix.q_individual[0][0].max())
    outcomes.append(
        CheckOutcome(
            name="alignment matrix game",
            passed=matrix.passed and best_individual == 3.0,
            detail={"best_individual_value": best_individual, "gap": matrix.gap},
        )
    )

    schedule = [16.0, 8.0, 4.0, 2.0, 1.0, 0.5, 0.0]
    monotone = True
    vanishing = True
    for _ in range(max(2, n_mdps // 4)):
        mdp = random_joint_mdp(8, (3, 3), 0.9, random_state)
        curve = epsilon_gap_experiment(mdp, schedule)
        gaps = curve["gap"].to_numpy()
        monotone = monotone and not np.any(np.diff(gaps) > MONOTONE_TOL)
        vanishing = vanishing and gaps[-1] <= ALIGNMENT_TOL
    outcomes.append(
        CheckOutcome(
            name="epsilon gap",
            passed=monotone and vanishing,
            detail={"monotone": monotone, "vanishing": vanishing},
        )
    )
    return outcomes
