import numpy as np
import pytest
from pytest import mark

from maxmax.exceptions import InvalidArgumentError
from maxmax.exceptions import InvalidConfigurationError
from maxmax.models.agents import HyDDPGAgent
from maxmax.models.agents import IDDPGAgent
from maxmax.models.agents import MMQAgent
from maxmax.models.agents import get_agent
from maxmax.models.agents import list_agents
from maxmax.models.replay import Batch
from maxmax.models.replay import ReplayBuffer
from maxmax.models.replay import Transition
from maxmax.nn import net_init
from maxmax.utils import get_random_state

SMALL = {"layer_sizes": (8,), "batch_size": 4, "buffer_size": 100}


def _batch(n=6, state_dim=2, action_dim=1, seed=0):
    rng = get_random_state(seed)
    return Batch(
        states=rng.uniform(-1, 1, size=(n, state_dim)),
        actions=rng.uniform(-1, 1, size=(n, action_dim)),
        rewards=rng.normal(size=n),
        next_states=rng.uniform(-1, 1, size=(n, state_dim)),
    )


def test_list_agents():
    names = {a.name for a in list_agents()}
    assert {"mmq", "iddpg", "hyddpg"} <= names


def test_get_agent():
    agent = get_agent("hyddpg", 2, 1, random_state=0, beta=0.25, n_samples=3, **SMALL)
    assert isinstance(agent, HyDDPGAgent)
    assert agent.beta == 0.25
    assert not hasattr(agent, "n_samples")

    with pytest.raises(InvalidConfigurationError):
        get_agent("maddpg", 2, 1)


@mark.parametrize(
    "kwargs",
    [
        {"gamma": 1.0},
        {"epsilon": 1.5},
        {"exploration_mode": "boltzmann"},
        {"critic_ratio": 0},
        {"pretrain_steps": -1},
    ],
)
def test_invalid_agent_configuration(kwargs):
    with pytest.raises(InvalidConfigurationError):
        IDDPGAgent(2, 1, **kwargs)


def test_invalid_mmq_configuration():
    with pytest.raises(InvalidConfigurationError):
        MMQAgent(2, 1, n_samples=-1)
    with pytest.raises(InvalidConfigurationError):
        MMQAgent(2, 1, tau_lower=0.9, tau_upper=0.1)
    with pytest.raises(InvalidConfigurationError):
        HyDDPGAgent(2, 1, beta=0.0)


def test_act_pretraining_uniform():
    agent = IDDPGAgent(2, 1, pretrain_steps=10, random_state=0, **SMALL)
    actions = np.array([agent.act(np.zeros(2)) for _ in range(4000)])

    assert actions.shape == (4000, 1)
    assert actions.min() >= -1.0
    assert actions.max() <= 1.0
    assert abs(actions.mean()) < 0.05
    assert abs((actions < 0).mean() - 0.5) < 0.05


def test_act_epsilon_greedy():
    agent = IDDPGAgent(2, 1, pretrain_steps=0, random_state=1, **SMALL)
    state = np.array([0.3, -0.2])
    greedy = agent.act(state, greedy=True)

    assert np.array_equal(agent.act(state, epsilon=0.0), greedy)

    rng = get_random_state(5)
    draws = [agent.act(state, epsilon=0.3, rng=rng) for _ in range(2000)]
    random_fraction = np.mean([not np.array_equal(a, greedy) for a in draws])
    assert abs(random_fraction - 0.3) < 0.05


def test_act_gaussian_exploration():
    agent = IDDPGAgent(
        2,
        1,
        pretrain_steps=0,
        exploration_mode="gaussian",
        exploration_sigma=0.1,
        random_state=2,
        **SMALL,
    )
    state = np.zeros(2)
    greedy = agent.act(state, greedy=True)
    actions = np.array([agent.act(state) for _ in range(2000)])

    assert np.all(np.abs(actions) <= 1.0)
    assert abs(actions.mean() - greedy[0]) < 0.02
    assert actions.std() == pytest.approx(0.1, abs=0.02)


def test_act_reproducible_with_rng():
    agent = IDDPGAgent(2, 1, pretrain_steps=5, random_state=0, **SMALL)
    a = agent.act(np.zeros(2), rng=11)
    b = agent.act(np.zeros(2), rng=11)
    assert np.array_equal(a, b)


def test_reward_shift_stored():
    mmq = MMQAgent(2, 1, pretrain_steps=10, random_state=0, **SMALL)
    iddpg = IDDPGAgent(2, 1, pretrain_steps=10, random_state=0, **SMALL)
    transition = Transition(np.zeros(2), np.zeros(1), -1.5, np.ones(2))

    mmq.train_step(transition)
    iddpg.train_step(transition)

    assert mmq.buffer.sample(1).rewards[0] == pytest.approx(-3.5)
    assert iddpg.buffer.sample(1).rewards[0] == pytest.approx(-1.5)


def test_update_cadence():
    agent = IDDPGAgent(
        2,
        1,
        pretrain_steps=3,
        train_every=2,
        critic_ratio=3,
        random_state=0,
        **SMALL,
    )
    rng = get_random_state(0)
    results = []
    for _ in range(9):
        transition = Transition(
            rng.normal(size=2), rng.uniform(-1, 1, 1), 0.0, rng.normal(size=2)
        )
        results.append(agent.train_step(transition))

    assert [bool(r) for r in results] == [False] * 4 + [True, False, True, False, True]
    assert agent.n_actor_updates == 3
    assert agent.n_critic_updates == 9
    assert set(results[4]) == {"critic_loss", "actor_loss"}


def test_mmq_update_diagnostics():
    agent = MMQAgent(2, 1, n_samples=3, critic_ratio=2, random_state=0, **SMALL)
    diagnostics = agent.update(_batch())
    assert set(diagnostics) == {
        "quantile_loss",
        "critic_loss",
        "reward_loss",
        "actor_loss",
    }
    assert agent.n_critic_updates == 2
    assert agent.n_actor_updates == 1


def test_mmq_candidates_true_next_state_last():
    agent = MMQAgent(
        2,
        1,
        n_samples=5,
        state_low=[-1.0, -1.0],
        state_high=[1.0, 1.0],
        random_state=0,
        **SMALL,
    )
    batch = _batch()
    candidates = agent.sample_candidates(batch.states, batch.actions, batch.next_states)

    assert candidates.shape == (6, 6, 2)
    assert np.array_equal(candidates[:, -1], batch.next_states)
    assert np.all(np.abs(candidates) <= 1.0)

    only_observed = agent.sample_candidates(
        batch.states, batch.actions, batch.next_states, n_samples=0
    )
    assert only_observed.shape == (6, 1, 2)


@mark.parametrize("seed", range(5))
def test_mmq_compute_target_brute_force(seed):
    agent = MMQAgent(2, 1, n_samples=4, gamma=0.9, random_state=seed, **SMALL)
    batch = _batch(seed=seed)
    candidates = agent.sample_candidates(batch.states, batch.actions, batch.next_states)
    targets, best = agent.compute_target(batch.states, candidates)

    for i in range(len(batch)):
        values = [
            agent.predicted_reward(batch.states[i], c)[0]
            + 0.9 * agent.target_value(c[None])[0]
            for c in candidates[i]
        ]
        assert targets[i] == pytest.approx(max(values))
        assert best[i] == int(np.argmax(values))


def test_mmq_target_without_samples():
    agent = MMQAgent(2, 1, n_samples=0, random_state=0, **SMALL)
    batch = _batch()
    targets = agent.compute_targets(batch)
    values = agent.candidate_values(batch.states, batch.next_states[:, None, :])
    np.testing.assert_allclose(targets, values[:, 0])


def test_mmq_target_ties_pick_first():
    agent = MMQAgent(2, 1, n_samples=3, random_state=0, **SMALL)
    for net in (agent.nets.reward, agent.nets.target_critic):
        net.weights = [np.zeros_like(w) for w in net.weights]
        net.biases = [np.zeros_like(b) for b in net.biases]

    batch = _batch()
    candidates = agent.sample_candidates(batch.states, batch.actions, batch.next_states)
    targets, best = agent.compute_target(batch.states, candidates)
    assert np.all(targets == 0.0)
    assert np.all(best == 0)


def test_mmq_target_shape_mismatch():
    agent = MMQAgent(2, 1, random_state=0, **SMALL)
    with pytest.raises(InvalidArgumentError):
        agent.compute_target(np.zeros((3, 2)), np.zeros((4, 2, 2)))


def test_mmq_target_at_least_observed_next_state():
    agent = MMQAgent(2, 1, n_samples=8, random_state=3, **SMALL)
    batch = _batch(seed=3)
    candidates = agent.sample_candidates(batch.states, batch.actions, batch.next_states)
    targets, _ = agent.compute_target(batch.states, candidates)
    observed = agent.candidate_values(batch.states, batch.next_states[:, None, :])
    assert np.all(targets >= observed[:, 0])


def test_mmq_coverage_statistic():
    agent = MMQAgent(2, 1, random_state=0, **SMALL)
    coverage = agent.coverage_statistic(_batch())
    assert 0.0 <= coverage <= 100.0
    assert agent.bound_width(_batch()) >= 0.0

    empty = Batch(np.zeros((0, 2)), np.zeros((0, 1)), np.zeros(0), np.zeros((0, 2)))
    with pytest.raises(InvalidArgumentError):
        agent.coverage_statistic(empty)


def test_mmq_gaussian_forward_model():
    agent = MMQAgent(
        2, 1, n_samples=3, forward_model="gaussian", random_state=0, **SMALL
    )
    diagnostics = agent.update(_batch())
    assert np.isfinite(diagnostics["quantile_loss"])


def test_hyddpg_sample_weight():
    agent = HyDDPGAgent(2, 1, beta=0.2, random_state=0, **SMALL)
    weights = agent.critic_sample_weight(np.array([1.5, -0.5, 0.0]))
    np.testing.assert_allclose(weights, [1.0, 0.2, 0.2])
    assert IDDPGAgent(2, 1, **SMALL).critic_sample_weight(np.ones(3)) is None


def test_hyddpg_beta_one_matches_iddpg():
    hyddpg = HyDDPGAgent(2, 1, beta=1.0, random_state=4, **SMALL)
    iddpg = IDDPGAgent(2, 1, random_state=4, **SMALL)
    batch = _batch(seed=4)
    for _ in range(3):
        hyddpg.update(batch)
        iddpg.update(batch)

    a = hyddpg.named_parameters()
    b = iddpg.named_parameters()
    assert list(a) == list(b)
    for key in a:
        np.testing.assert_allclose(a[key], b[key])


def test_hyddpg_scales_pessimistic_errors():
    # every target sits far below the initial critic output
    batch = _batch(seed=6)
    batch.rewards = np.full(len(batch), -5.0)
    losses = {}
    for beta in (1.0, 0.1):
        agent = HyDDPGAgent(2, 1, beta=beta, random_state=6, **SMALL)
        losses[beta] = agent.update_critic(batch)
    assert losses[0.1] == pytest.approx(0.1 * losses[1.0])


def test_critic_converges_on_constant_reward():
    agent = IDDPGAgent(
        1,
        1,
        layer_sizes=(16,),
        learning_rate=0.001,
        gamma=0.5,
        batch_size=32,
        critic_ratio=1,
        target_mix=0.1,
        random_state=0,
    )
    buffer = ReplayBuffer(1, 1, 100, random_state=0)
    rng = get_random_state(0)
    for _ in range(64):
        buffer.add([0.0], rng.uniform(-1, 1, 1), 1.0, [0.0])

    for _ in range(10000):
        agent.update(buffer.sample(32))

    q = agent.target_value(np.zeros((1, 1)))[0]
    assert q == pytest.approx(2.0, rel=0.01)


def test_named_parameters_include_forward_model():
    agent = MMQAgent(2, 1, random_state=0, **SMALL)
    keys = list(agent.named_parameters())
    assert any(k.startswith("critic.") for k in keys)
    assert any(k.startswith("reward.") for k in keys)
    assert any(k.startswith("forward.lower.") for k in keys)

    other = MMQAgent(2, 1, random_state=1, **SMALL)
    other.load_named_parameters(agent.named_parameters())
    state = np.array([0.1, 0.2])
    assert np.array_equal(other.act(state, greedy=True), agent.act(state, greedy=True))


def test_batch_from_transitions():
    batch = Batch.from_transitions(
        [
            Transition(np.zeros(2), 0.5, 1.0, np.ones(2)),
            Transition(np.ones(2), np.array([-0.5]), 2.0, np.zeros(2)),
        ]
    )
    assert len(batch) == 2
    assert batch.actions.shape == (2, 1)
    assert batch.rewards.tolist() == [1.0, 2.0]

    with pytest.raises(InvalidArgumentError):
        Batch.from_transitions([])


def test_agent_param():
    agent = HyDDPGAgent(2, 1, beta=0.3, random_state=0, **SMALL)
    param = agent.param
    assert param["beta"] == 0.3
    assert param["layer_sizes"] == (8,)
    assert "random_state" not in param


def test_reward_model_learns_constant_reward():
    agent = MMQAgent(2, 1, random_state=0)
    rng = get_random_state(0)
    batch = Batch(
        states=rng.uniform(-1, 1, size=(64, 2)),
        actions=rng.uniform(-1, 1, size=(64, 1)),
        rewards=np.full(64, 3.0),
        next_states=rng.uniform(-1, 1, size=(64, 2)),
    )
    for _ in range(2000):
        agent.update_reward_model(batch)

    states = rng.uniform(-1, 1, size=(20, 2))
    next_states = rng.uniform(-1, 1, size=(20, 2))
    np.testing.assert_allclose(
        agent.predicted_reward(states, next_states), 3.0, atol=0.02
    )


def _peaked_critic(state_dim, knots=(0.05, 0.25, 0.45, 0.65, 0.85)):
    """Frozen critic over (s, a) with a single scalar action, highest at a = 0.

    The value is a piecewise-linear concave bowl in a that ignores the state.
    """
    n_hidden = 2 * len(knots)
    net = net_init((state_dim + 1, n_hidden, 1), 0)
    net.weights[0] = np.zeros((n_hidden, state_dim + 1))
    net.weights[0][: len(knots), state_dim] = 1.0
    net.weights[0][len(knots) :, state_dim] = -1.0
    net.biases[0] = -np.tile(knots, 2)
    net.weights[1] = np.full((1, n_hidden), -0.5)
    net.biases[1] = np.zeros(1)
    return net


def test_actor_moves_toward_critic_peak():
    agent = IDDPGAgent(2, 1, layer_sizes=(8,), learning_rate=0.005, random_state=0)
    agent.nets.critic = _peaked_critic(2)
    frozen = [p.copy() for p in agent.nets.critic.parameters()]
    agent.nets.actor.biases[-1][:] = 1.0

    states = get_random_state(1).uniform(-1, 1, size=(32, 2))
    batch = Batch(states, np.zeros((32, 1)), np.zeros(32), states)
    before = np.mean(np.abs(agent.policy(states)))
    for _ in range(1000):
        agent.update_actor(batch)
    after = np.mean(np.abs(agent.policy(states)))

    assert before > 0.3
    assert after < 0.1
    for p, q in zip(agent.nets.critic.parameters(), frozen):
        assert np.array_equal(p, q)


def test_critic_update_ignores_target_models():
    a = MMQAgent(2, 1, n_samples=4, random_state=0, **SMALL)
    b = MMQAgent(2, 1, n_samples=4, random_state=0, **SMALL)
    batch = _batch(seed=8)
    targets = a.compute_targets(batch)

    for net in (b.forward.lower_net, b.forward.upper_net, b.nets.reward):
        net.weights[0] += 1.0
    forward_before = {k: v.copy() for k, v in b.forward.named_parameters().items()}

    a.update_critic(batch, targets)
    b.update_critic(batch, targets)

    for p, q in zip(a.nets.critic.parameters(), b.nets.critic.parameters()):
        assert np.array_equal(p, q)
    for key, value in b.forward.named_parameters().items():
        assert np.array_equal(value, forward_before[key])
