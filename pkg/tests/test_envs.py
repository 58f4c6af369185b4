from fractions import Fraction

import numpy as np
import pytest
from pytest import mark

from maxmax.envs import DifferentialGame
from maxmax.envs import MpeTaskSpec
from maxmax.envs import NoiseConfig
from maxmax.envs import dg_location_metric
from maxmax.envs import dg_reset
from maxmax.envs import dg_reward
from maxmax.envs import dg_step
from maxmax.envs import get_env
from maxmax.envs import list_envs
from maxmax.envs import matrix_expected_q
from maxmax.envs import matrix_payoff
from maxmax.envs import matrix_threshold_sweep
from maxmax.envs import mpe_reset
from maxmax.envs import mpe_reward
from maxmax.envs import mpe_step
from maxmax.envs import pp_prey_policy
from maxmax.envs.mpe import REWARD_TABLE
from maxmax.exceptions import InvalidConfigurationError
from maxmax.utils import get_random_state

ENV_NAMES = [
    "dg",
    "dg3",
    "dg4",
    "dg5",
    "cn",
    "cn_more_penalty",
    "cn_ht",
    "cn_ha",
    "pp",
    "sequential",
]


def _mpe_state(agents, targets, cargo=None):
    parts = [[x, y, 0.0, 0.0] for x, y in agents]
    state = np.concatenate([np.ravel(parts), np.ravel(targets)])
    if cargo is not None:
        state = np.append(state, cargo)
    return state


def test_list_envs():
    names = [env.name for env in list_envs()]
    for name in ENV_NAMES:
        assert name in names


@mark.parametrize("name", ENV_NAMES)
def test_env_reset_and_step(name):
    env = get_env(name, random_state=0)
    state = env.reset()
    assert state.shape == (env.state_dim,)

    low, high = env.state_bounds()
    assert np.all(state >= low) and np.all(state <= high)

    result = env.step(np.zeros((env.n_agents, env.action_dim)))
    assert result.next_state.shape == (env.state_dim,)
    assert np.isfinite(result.reward)
    assert not result.done


def test_get_env_unknown():
    with pytest.raises(InvalidConfigurationError):
        get_env("not_an_env")


def test_get_env_unsupported_option():
    with pytest.raises(InvalidConfigurationError):
        get_env("cn", sigma_s=0.1)


def test_dg_aliases():
    assert get_env("dg3").n_agents == 3
    assert get_env("dg5").state_dim == 5
    assert get_env("dg", n_agents=4).n_agents == 4


def test_dg_location_metric():
    assert dg_location_metric([0.0, 0.0]) == 0.0
    assert dg_location_metric([1.0, 1.0]) == pytest.approx(np.sqrt(2))
    assert dg_location_metric([0.5, -0.5]) == pytest.approx(np.sqrt(0.5))


def test_dg_reward():
    assert dg_reward(0.0, 2) == pytest.approx(1.0)
    assert dg_reward(0.8, 2) == pytest.approx(0.3)
    assert dg_reward(0.4, 2) == 0.0
    assert dg_reward(1.2, 2) == 0.0


@mark.parametrize("n_agents", [2, 3, 4, 5])
def test_dg_reward_continuity(n_agents):
    m = 0.13 * (n_agents - 1)
    for edge in [m, 0.6, 1.0]:
        left = dg_reward(edge, n_agents)
        right = dg_reward(edge + 1e-14, n_agents)
        assert abs(left - right) < 1e-12


def test_dg_step_examples():
    result = dg_step(np.zeros(2), np.ones(2))
    np.testing.assert_allclose(result.next_state, [0.1, 0.1])
    assert result.reward == 0.0

    result = dg_step(np.array([1.0, 0.0]), np.array([1.0, 0.0]))
    assert result.next_state[0] == 1.0


def test_dg_step_clips_actions_and_positions():
    rng = np.random.RandomState(3)
    state = dg_reset(3, 3)
    for _ in range(200):
        state = dg_step(state, rng.uniform(-5, 5, size=3)).next_state
        assert np.all(np.abs(state) <= 1.0)


def test_dg_step_noise_reproducible():
    noise = NoiseConfig(sigma_s=0.05, sigma_r=0.1)
    a = dg_step(np.zeros(2), np.ones(2), noise=noise, rng=5)
    b = dg_step(np.zeros(2), np.ones(2), noise=noise, rng=5)
    assert np.array_equal(a.next_state, b.next_state)
    assert a.reward == b.reward
    assert not np.allclose(a.next_state, [0.1, 0.1])


def test_noise_config_negative():
    with pytest.raises(InvalidConfigurationError):
        NoiseConfig(sigma_s=-0.1)


def test_dg_reset():
    assert dg_reset(5, 1).shape == (5,)
    assert np.array_equal(dg_reset(2, 1), dg_reset(2, 1))
    with pytest.raises(InvalidConfigurationError):
        dg_reset(1, 0)


def test_dg_reset_uniform():
    rng = get_random_state(0)
    samples = np.concatenate([dg_reset(2, rng) for _ in range(10000)])
    counts, _ = np.histogram(samples, bins=10, range=(-1, 1))
    assert np.all(np.abs(counts - 2000) < 300)


@mark.parametrize("name,length", [("dg", 25), ("cn", 25), ("sequential", 50)])
def test_episode_cutoff(name, length):
    env = get_env(name, random_state=1)
    env.reset()
    action = np.zeros((env.n_agents, env.action_dim))
    for _ in range(length - 1):
        assert not env.step(action).done
    assert env.step(action).done


def test_env_deterministic():
    trajectories = []
    for _ in range(2):
        env = DifferentialGame(random_state=4)
        states = [env.reset()]
        for _ in range(10):
            states.append(env.step(np.array([0.3, -0.7])).next_state)
        trajectories.append(np.stack(states))
    assert np.array_equal(*trajectories)


def test_step_before_reset():
    with pytest.raises(RuntimeError):
        DifferentialGame().step(np.zeros(2))


def test_mpe_zero_action_keeps_position():
    spec = MpeTaskSpec(variant="CN")
    state = mpe_reset(spec, 0)
    result = mpe_step(state, np.zeros((2, 2)), spec)
    np.testing.assert_array_equal(result.next_state, state)


def test_mpe_kinematics():
    spec = MpeTaskSpec(variant="CN")
    state = _mpe_state([(0.0, 0.0), (1.0, 1.0)], [(-1.0, -1.0)])
    result = mpe_step(state, np.array([[1.0, 0.0], [0.0, 0.0]]), spec)
    # v = 5 * 0.1 = 0.5 and x = 0.5 * 0.1
    np.testing.assert_allclose(result.next_state[:4], [0.05, 0.0, 0.5, 0.0])


def test_mpe_ha_speed_multiplier():
    spec = MpeTaskSpec(variant="HA")
    state = _mpe_state([(0.0, 0.0), (0.0, 1.0)], [(-1.0, -1.0)])
    result = mpe_step(state, np.array([[1.0, 0.0], [1.0, 0.0]]), spec)
    assert result.next_state[4] == pytest.approx(0.7 * result.next_state[0])


def test_mpe_positions_stay_in_arena():
    spec = MpeTaskSpec(variant="CN")
    state = _mpe_state([(1.45, 0.0), (-1.45, 0.0)], [(0.0, 0.0)])
    for _ in range(20):
        state = mpe_step(state, np.array([[1.0, 1.0], [-1.0, -1.0]]), spec).next_state
    assert np.all(np.abs(state[[0, 1, 4, 5]]) <= 1.5)


def test_cn_rewards():
    spec = MpeTaskSpec(variant="CN")
    target = [(0.0, 0.0)]

    both_inside = _mpe_state([(0.1, 0.0), (-0.2, 0.0)], target)
    assert mpe_reward(both_inside, spec) == pytest.approx(-0.3)

    one_inside = _mpe_state([(0.1, 0.0), (1.0, 1.0)], target)
    assert mpe_reward(one_inside, spec) == pytest.approx(-1.2 - 0.2)

    none_inside = _mpe_state([(1.0, 0.0), (1.0, 1.0)], target)
    assert mpe_reward(none_inside, spec) == pytest.approx(-1.2)


def test_more_penalty_and_pp_rewards():
    one_inside = _mpe_state([(0.1, 0.0), (1.0, 1.0)], [(0.0, 0.0)])
    spec = MpeTaskSpec(variant="MorePenalty")
    assert mpe_reward(one_inside, spec) == pytest.approx(-1.7)

    spec = MpeTaskSpec(variant="PP")
    assert spec.alpha == 0.3
    assert mpe_reward(one_inside, spec) == pytest.approx(-3 * 0.5 - 0.5)


def test_ht_rewards():
    spec = MpeTaskSpec(variant="HT")
    targets = [(1.0, 1.0), (-1.0, -1.0)]

    at_b = _mpe_state([(-1.0, -0.9), (-0.9, -1.0)], targets)
    assert mpe_reward(at_b, spec) == pytest.approx(-2.5)

    at_a = _mpe_state([(1.0, 0.9), (0.9, 1.0)], targets)
    assert mpe_reward(at_a, spec) == pytest.approx(0.0)

    one_at_a = _mpe_state([(1.0, 0.9), (0.0, 0.0)], targets)
    assert mpe_reward(one_at_a, spec) == pytest.approx(-3.5)

    nowhere = _mpe_state([(0.0, 0.5), (0.0, 0.0)], targets)
    assert mpe_reward(nowhere, spec) == pytest.approx(-3.0)


def test_sequential_cargo():
    spec = MpeTaskSpec(variant="Sequential")
    assert spec.state_dim == 13
    targets = [(1.0, 1.0), (-1.0, -1.0)]

    at_a = _mpe_state([(1.0, 0.9), (0.9, 1.0)], targets, cargo=0.0)
    assert mpe_reward(at_a, spec) == pytest.approx(-3.0)
    at_a[-1] = 1.0
    assert mpe_reward(at_a, spec) == pytest.approx(-0.5)

    at_b = _mpe_state([(-1.0, -0.9), (-0.9, -1.0)], targets, cargo=0.0)
    result = mpe_step(at_b, np.zeros((2, 2)), spec)
    assert result.next_state[-1] == 1.0

    # cargo stays once picked up
    away = result.next_state.copy()
    away[[0, 1, 4, 5]] = [0.0, 0.0, 0.0, 0.3]
    assert mpe_step(away, np.zeros((2, 2)), spec).next_state[-1] == 1.0


@mark.parametrize("key", sorted(REWARD_TABLE))
def test_reward_ordering(key):
    rule = REWARD_TABLE[key]
    spec = MpeTaskSpec(variant="CN")
    r_out = rule.r_out
    if r_out is None:
        r_out = -3 * (spec.disk_radius + spec.agent_radius)

    for distance in np.linspace(0.0, 0.39, 14):
        r_in = -3 * distance if rule.r_in is None else rule.r_in
        assert r_out - rule.penalty <= r_out < r_in


def test_mpe_unknown_variant():
    with pytest.raises(InvalidConfigurationError):
        MpeTaskSpec(variant="Soccer")


def test_prey_runs_away():
    spec = MpeTaskSpec(variant="PP")
    state = _mpe_state([(-0.5, 0.0), (-1.0, 1.0)], [(0.0, 0.0)])
    np.testing.assert_allclose(pp_prey_policy(state, spec=spec), [1.0, 0.0])


def test_prey_tie_break_first_predator():
    spec = MpeTaskSpec(variant="PP")
    state = _mpe_state([(0.0, 0.5), (0.0, -0.5)], [(0.0, 0.0)])
    np.testing.assert_allclose(pp_prey_policy(state, spec=spec), [0.0, -1.0])


def test_prey_slides_along_wall():
    spec = MpeTaskSpec(variant="PP")
    state = _mpe_state([(1.0, -0.2), (-1.0, -1.0)], [(1.45, 0.0)])
    direction = pp_prey_policy(state, spec=spec)
    assert direction[0] <= 0.0
    assert direction[1] > 0.0

    head_on = _mpe_state([(1.0, 0.0), (-1.0, -1.0)], [(1.45, 0.0)])
    direction = pp_prey_policy(head_on, spec=spec)
    assert direction[0] == 0.0
    assert abs(direction[1]) == 1.0

    for _ in range(10):
        head_on = mpe_step(head_on, np.zeros((2, 2)), spec).next_state
        assert np.all(np.abs(head_on[8:10]) <= 1.5)


def test_matrix_payoff():
    assert matrix_payoff("A", "A") == 3
    assert matrix_payoff("A", "B") == -6
    assert matrix_payoff("B", "A") == -6
    assert matrix_payoff("C", "C") == 0
    assert matrix_payoff(1, 2) == 0
    with pytest.raises(InvalidConfigurationError):
        matrix_payoff("D", "A")


def test_matrix_expected_q():
    payoff = [[3, -6, -6], [-6, 0, 0], [-6, 0, 0]]
    third = Fraction(1, 3)
    q = matrix_expected_q(payoff, [third, third, third])
    assert list(q) == [-3, -2, -2]

    q = matrix_expected_q(payoff, [Fraction(2, 5), Fraction(3, 10), Fraction(3, 10)])
    assert q[0] == q[1] == Fraction(-12, 5)

    assert matrix_expected_q(payoff, [1.0, 0.0, 0.0])[0] == 3

    with pytest.raises(InvalidConfigurationError):
        matrix_expected_q(payoff, [0.5, 0.2, 0.2])


def test_matrix_threshold_crossover():
    sweep = matrix_threshold_sweep()
    for _, row in sweep.iterrows():
        if row["pi_A"] < Fraction(2, 5):
            assert row["greedy"] == "B,C"
        elif row["pi_A"] == Fraction(2, 5):
            assert row["greedy"] == "A,B,C"
        else:
            assert row["greedy"] == "A"
    assert Fraction(2, 5) in list(sweep["pi_A"])
