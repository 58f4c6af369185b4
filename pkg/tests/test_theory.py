import numpy as np
import pytest
from pytest import mark

from maxmax.config import EXIT_SUCCESS
from maxmax.exceptions import InvalidConfigurationError
from maxmax.theory import FiniteJointMdp
from maxmax.theory import alignment_check
from maxmax.theory import contraction_check
from maxmax.theory import epsilon_gap_experiment
from maxmax.theory import matrix_game_mdp
from maxmax.theory import mc_min_distance_experiment
from maxmax.theory import random_joint_mdp
from maxmax.theory import run_theory_suite
from maxmax.theory import worst_case_gap
from maxmax.theory.cli import cli_theory
from maxmax.theory.mdp import individual_fixed_point
from maxmax.theory.mdp import joint_value_iteration
from maxmax.theory.mdp import next_state_sets


@mark.parametrize("M", [1, 5, 15])
@mark.parametrize("c", [0.0, 0.5])
def test_min_distance_below_bound(M, c):
    result = mc_min_distance_experiment(1.0, c, M, 20000, rng=M)
    assert result.below_bound
    assert result.matches_closed_form
    assert result.passed


def test_min_distance_closed_form_values():
    result = mc_min_distance_experiment(2.0, 0.0, 3, 10, rng=0)
    assert result.closed_form == pytest.approx(0.5)
    assert result.bound == pytest.approx(1.0)

    edge = mc_min_distance_experiment(1.0, 1.0, 4, 20000, rng=1)
    assert edge.closed_form == pytest.approx(edge.bound)
    assert edge.passed


@mark.parametrize(
    "args", [(0.0, 0.0, 5, 10), (1.0, 1.5, 5, 10), (1.0, 0.0, 0, 10), (1.0, 0.0, 5, 0)]
)
def test_min_distance_invalid(args):
    with pytest.raises(InvalidConfigurationError):
        mc_min_distance_experiment(*args, rng=0)


@mark.parametrize("rule", ["full", "random", "singleton"])
@mark.parametrize("gamma", [0.5, 0.9, 0.99])
def test_set_operator_contracts(rule, gamma):
    mdp = random_joint_mdp(6, (2, 3), gamma, rng=int(gamma * 100))
    result = contraction_check(mdp, rule, trials=50, rng=0)
    assert len(result.ratios) == 50
    assert result.passed
    assert result.max_ratio <= gamma + 1e-12


def test_contraction_zero_gamma():
    mdp = random_joint_mdp(4, (2, 2), 0.0, rng=0)
    result = contraction_check(mdp, "full", trials=10, rng=0)
    assert result.max_ratio == 0.0


def test_contraction_unknown_rule():
    with pytest.raises(InvalidConfigurationError):
        contraction_check(random_joint_mdp(3, rng=0), "half", trials=1, rng=0)


@mark.parametrize("seed", range(5))
def test_individual_optima_align_with_joint(seed):
    mdp = random_joint_mdp(5 + seed, (2 + seed % 2, 2), 0.9, rng=seed)
    result = alignment_check(mdp, check=True)
    assert result.passed
    assert result.q_joint.shape == (5 + seed, 2 + seed % 2, 2)
    assert result.q_individual[0].shape == (5 + seed, 2 + seed % 2)
    assert result.q_individual[1].shape == (5 + seed, 2)


def test_matrix_game_mdp():
    mdp = matrix_game_mdp(gamma=0.0)
    assert mdp.n_states == 10
    assert mdp.rewards[0, 1] == 3.0

    reachable = next_state_sets(mdp, 0)
    assert reachable[0].sum(axis=1).tolist() == [3, 3, 3]

    result = alignment_check(mdp)
    assert result.passed
    assert result.q_individual[0][0].max() == 3.0
    assert result.q_joint[0].max() == 3.0


def test_epsilon_gap_shrinks():
    mdp = random_joint_mdp(8, (3, 3), 0.9, rng=2)
    schedule = [16.0, 8.0, 4.0, 2.0, 1.0, 0.0]
    curve = epsilon_gap_experiment(mdp, schedule, check=True)

    gaps = curve["gap"].to_numpy()
    assert list(curve["epsilon"]) == schedule
    assert np.all(np.diff(gaps) <= 1e-9)
    assert gaps[-1] == pytest.approx(0.0, abs=1e-8)
    assert gaps[0] <= worst_case_gap(mdp) + 1e-9


def test_epsilon_gap_negative_epsilon():
    with pytest.raises(InvalidConfigurationError):
        epsilon_gap_experiment(random_joint_mdp(3, rng=0), [-1.0])


def test_reward_shift_keeps_greedy_actions():
    mdp = random_joint_mdp(5, (3, 3), 0.9, rng=4)
    shifted = FiniteJointMdp(
        transitions=mdp.transitions, rewards=mdp.rewards - 2.0, gamma=mdp.gamma
    )

    q = joint_value_iteration(mdp)
    q_shifted = joint_value_iteration(shifted)
    np.testing.assert_allclose(q_shifted, q - 2.0 / (1 - 0.9), atol=1e-8)

    full = next_state_sets(mdp, 0)
    q_i = individual_fixed_point(mdp, full)
    q_i_shifted = individual_fixed_point(shifted, full)
    assert np.array_equal(q_i.argmax(axis=1), q_i_shifted.argmax(axis=1))


@mark.parametrize(
    "transitions,rewards,gamma",
    [
        (np.zeros((2, 2)), np.zeros((2, 2)), 0.5),
        (np.zeros((2, 2, 2)), np.zeros((3, 3)), 0.5),
        (np.full((2, 2, 2), 2), np.zeros((2, 2)), 0.5),
        (np.zeros((2, 2, 2)), np.full((2, 2), np.nan), 0.5),
        (np.zeros((2, 2, 2)), np.zeros((2, 2)), 1.0),
    ],
)
def test_invalid_mdp(transitions, rewards, gamma):
    with pytest.raises(InvalidConfigurationError):
        FiniteJointMdp(transitions=transitions, rewards=rewards, gamma=gamma)


def test_quick_suite_passes():
    outcomes = run_theory_suite(seed=0, quick=True)
    names = [outcome.name for outcome in outcomes]
    assert "contraction" in names
    assert "alignment" in names
    assert "epsilon gap" in names
    assert all(outcome.passed for outcome in outcomes)


def test_cli_theory(capsys):
    assert cli_theory(["--quick"]) == EXIT_SUCCESS
    out = capsys.readouterr().out
    assert "alignment\tpass" in out
