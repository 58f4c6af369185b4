import numpy as np
import pytest
from pytest import mark

from maxmax.config import MATRIX_PAYOFF
from maxmax.envs.matrix import matrix_expected_q
from maxmax.exceptions import InvalidConfigurationError
from maxmax.models.tabular import TabularQ
from maxmax.models.tabular import tabular_matrix_learn
from maxmax.utils import get_random_state

SAFE = {"B", "C"}


def test_average_step_size():
    table = TabularQ()
    table.update(0, 3.0)
    assert table.values[0] == pytest.approx(1.5)
    table.update(0, 3.0)
    assert table.values[0] == pytest.approx(2.0)
    assert table.counts[0] == 2


def test_constant_step_size():
    table = TabularQ(learning_rate=0.1)
    table.update(1, -6.0)
    assert table.values[1] == pytest.approx(-0.6)


def test_optimistic_max_ignores_lower_rewards():
    table = TabularQ(values=[1.0, 0.0, 0.0], update_rule="optimistic-max")
    table.update(0, -6.0)
    assert table.values[0] == 1.0
    assert table.counts[0] == 0

    table.update(0, 3.0)
    assert table.values[0] == pytest.approx(2.0)


def test_greedy_ties_random():
    table = TabularQ()
    rng = get_random_state(0)
    picks = {table.greedy(rng) for _ in range(200)}
    assert picks == {0, 1, 2}

    table.values[2] = 1.0
    assert table.greedy(rng) == 2


@mark.parametrize(
    "kwargs",
    [
        {"update_rule": "median", "episodes": 10, "exploration": 0.1},
        {"update_rule": "average", "episodes": 0, "exploration": 0.1},
        {"update_rule": "average", "episodes": 10, "exploration": 1.5},
    ],
)
def test_invalid_arguments(kwargs):
    with pytest.raises(InvalidConfigurationError):
        tabular_matrix_learn(rng=0, **kwargs)


def test_no_exploration_stays_at_start():
    start = np.array([[0.0, 1.0, 0.0], [0.0, 1.0, 0.0]])
    result = tabular_matrix_learn(
        "average", 200, 0.0, rng=0, initial_values=start
    )
    assert result.greedy_joint == ("B", "B")
    assert result.joint_counts[1, 1] == 200
    assert result.greedy_return == 0


def test_average_rule_settles_on_safe_actions():
    safe = 0
    for seed in range(8):
        result = tabular_matrix_learn("average", 1000, 1.0, rng=seed)
        safe += set(result.greedy_joint) <= SAFE
    assert safe >= 7


def test_optimistic_max_reaches_joint_optimum():
    for seed in range(8):
        result = tabular_matrix_learn("optimistic-max", 1000, 1.0, rng=seed)
        assert result.greedy_joint == ("A", "A")
        assert result.greedy_return == 3
        for table in result.tables:
            assert table.values[0] == pytest.approx(3.0, abs=0.05)


def test_average_values_track_expected_payoff():
    # uniform play keeps each partner stationary
    result = tabular_matrix_learn("average", 90000, 1.0, rng=3)
    frequencies = result.joint_frequencies
    for table, partner in zip(
        result.tables, (frequencies.sum(axis=0), frequencies.sum(axis=1))
    ):
        expected = matrix_expected_q(MATRIX_PAYOFF, partner)
        np.testing.assert_allclose(table.values, expected, atol=0.1)


def test_joint_frequencies_sum_to_one():
    result = tabular_matrix_learn("average", 100, 0.5, rng=1)
    assert result.joint_counts.sum() == 100
    assert result.joint_frequencies.sum() == pytest.approx(1.0)


def test_learning_deterministic():
    a = tabular_matrix_learn("average", 300, 0.3, rng=9)
    b = tabular_matrix_learn("average", 300, 0.3, rng=9)
    assert np.array_equal(a.joint_counts, b.joint_counts)
    assert a.greedy_joint == b.greedy_joint
