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

__all__ = ["AgentNets", "BaseAgent"]

import logging
from abc import abstractmethod
from dataclasses import dataclass
from typing import Optional

import numpy as np

from maxmax.config import ACTION_HIGH
from maxmax.config import ACTION_LOW
from maxmax.config import DEFAULT_BATCH_SIZE
from maxmax.config import DEFAULT_BUFFER_SIZE
from maxmax.config import DEFAULT_CRITIC_RATIO
from maxmax.config import DEFAULT_EPSILON
from maxmax.config import DEFAULT_EXPLORATION_MODE
from maxmax.config import DEFAULT_EXPLORATION_SIGMA
from maxmax.config import DEFAULT_GAMMA
from maxmax.config import DEFAULT_LAYER_SIZES
from maxmax.config import DEFAULT_LEARNING_RATE
from maxmax.config import DEFAULT_PRETRAIN_STEPS
from maxmax.config import DEFAULT_TARGET_MIX
from maxmax.exceptions import InvalidConfigurationError
from maxmax.models.base import BaseModel
from maxmax.models.replay import ReplayBuffer
from maxmax.nn import AdamState
from maxmax.nn import FeedForwardNet
from maxmax.nn import adam_init
from maxmax.nn import adam_step
from maxmax.nn import net_backward
from maxmax.nn import net_forward
from maxmax.nn import net_init
from maxmax.nn import soft_update
from maxmax.utils import get_random_state

EXPLORATION_MODES = ("uniform", "gaussian")


@dataclass
class AgentNets:
    """Online and target networks of one agent with their optimizer states."""

    critic: FeedForwardNet
    target_critic: FeedForwardNet
    actor: FeedForwardNet
    target_actor: FeedForwardNet
    critic_optim: AdamState
    actor_optim: AdamState
    reward: Optional[FeedForwardNet] = None
    reward_optim: Optional[AdamState] = None

    def named_parameters(self):
        named = {}
        for prefix in ("critic", "target_critic", "actor", "target_actor", "reward"):
            net = getattr(self, prefix)
            if net is not None:
                named.update(net.named_parameters(f"{prefix}."))
        return named

    def load_named_parameters(self, named):
        for prefix in ("critic", "target_critic", "actor", "target_actor", "reward"):
            net = getattr(self, prefix)
            if net is not None:
                net.load_named_parameters(named, f"{prefix}.")


class BaseAgent(BaseModel):
    """Independent deterministic actor-critic learner.

    Each agent sees the global state, chooses only its own action and learns
    from its own replay buffer. Subclasses define the critic target.

    Arguments
    ---------
    state_dim: int
        Size of the global state.
    action_dim: int
        Size of the agent's own action.
    layer_sizes: tuple
        Hidden layer sizes of every network.
    learning_rate: float
        Adam learning rate of every network.
    gamma: float
        Discount factor in (0, 1).
    epsilon: float
        Probability of a uniformly random action after pretraining.
    exploration_mode: str
        "uniform" for epsilon-greedy replacement, "gaussian" for additive
        Gaussian noise on every action.
    exploration_sigma: float
        Standard deviation of the additive noise.
    batch_size: int
        Transitions per training trigger.
    buffer_size: int
        Replay buffer capacity.
    pretrain_steps: int
        Environment steps with uniformly random actions and no training.
    critic_ratio: int
        Critic updates per actor update.
    target_mix: float
        Soft update coefficient of the target networks.
    reward_shift: float
        Constant subtracted from every reward at insertion.
    train_every: int
        Environment steps between training triggers.
    state_low, state_high: np.ndarray
        Valid state box, used to clamp sampled states.
    random_state: int, SeededRandomState
        Random state of the agent.
    """

    name = "base-agent"
    label = "Base agent"

    def __init__(
        self,
        state_dim,
        action_dim,
        layer_sizes=DEFAULT_LAYER_SIZES,
        learning_rate=DEFAULT_LEARNING_RATE,
        gamma=DEFAULT_GAMMA,
        epsilon=DEFAULT_EPSILON,
        exploration_mode=DEFAULT_EXPLORATION_MODE,
        exploration_sigma=DEFAULT_EXPLORATION_SIGMA,
        batch_size=DEFAULT_BATCH_SIZE,
        buffer_size=DEFAULT_BUFFER_SIZE,
        pretrain_steps=DEFAULT_PRETRAIN_STEPS,
        critic_ratio=DEFAULT_CRITIC_RATIO,
        target_mix=DEFAULT_TARGET_MIX,
        reward_shift=0.0,
        train_every=1,
        state_low=None,
        state_high=None,
        random_state=None,
    ):
        if not 0.0 < gamma < 1.0:
            raise InvalidConfigurationError(f"gamma should be in (0, 1): {gamma}")
        if not 0.0 <= epsilon <= 1.0:
            raise InvalidConfigurationError(f"epsilon should be in [0, 1]: {epsilon}")
        if exploration_mode not in EXPLORATION_MODES:
            raise InvalidConfigurationError(
                f"Unknown exploration mode '{exploration_mode}'"
            )
        if critic_ratio < 1 or batch_size < 1 or train_every < 1:
            raise InvalidConfigurationError(
                "critic_ratio, batch_size and train_every should be positive"
            )
        if pretrain_steps < 0:
            raise InvalidConfigurationError("pretrain_steps should be nonnegative")

        self.state_dim = int(state_dim)
        self.action_dim = int(action_dim)
        self.layer_sizes = tuple(layer_sizes)
        self.learning_rate = learning_rate
        self.gamma = gamma
        self.epsilon = epsilon
        self.exploration_mode = exploration_mode
        self.exploration_sigma = exploration_sigma
        self.batch_size = int(batch_size)
        self.buffer_size = int(buffer_size)
        self.pretrain_steps = int(pretrain_steps)
        self.critic_ratio = int(critic_ratio)
        self.target_mix = target_mix
        self.reward_shift = reward_shift
        self.train_every = int(train_every)
        self.state_low = None if state_low is None else np.asarray(state_low, float)
        self.state_high = None if state_high is None else np.asarray(state_high, float)
        self._random_state = get_random_state(random_state)

        seeds = [int(x) for x in self._random_state.randint(0, 2**31 - 1, size=4)]
        self._model_seed = seeds[3]
        self.buffer = ReplayBuffer(
            self.state_dim, self.action_dim, self.buffer_size, random_state=seeds[2]
        )
        self.nets = self._init_nets(seeds[0], seeds[1])

        self.n_steps = 0
        self.n_critic_updates = 0
        self.n_actor_updates = 0

    def _init_nets(self, critic_seed, actor_seed):
        critic = net_init(
            (self.state_dim + self.action_dim, *self.layer_sizes, 1), critic_seed
        )
        actor = net_init(
            (self.state_dim, *self.layer_sizes, self.action_dim),
            actor_seed,
            output_activation="tanh",
            output_scale=ACTION_HIGH,
        )
        return AgentNets(
            critic=critic,
            target_critic=critic.copy(),
            actor=actor,
            target_actor=actor.copy(),
            critic_optim=adam_init(critic, self.learning_rate),
            actor_optim=adam_init(actor, self.learning_rate),
        )

    @property
    def pretraining(self):
        return self.n_steps < self.pretrain_steps

    def policy(self, state):
        """Deterministic action of the online actor."""
        return net_forward(self.nets.actor, state)

    def act(self, state, epsilon=None, rng=None, greedy=False):
        """Choose an action for the current state.

        Arguments
        ---------
        state: np.ndarray
            Global state.
        epsilon: float
            Exploration probability, defaults to the agent's epsilon.
        rng: int, SeededRandomState
            Random source, defaults to the agent's own random state.
        greedy: bool
            Return the actor's action without any exploration.

        Returns
        -------
        np.ndarray:
            Action in [-1, 1]^action_dim.
        """
        if greedy:
            return self.policy(state)

        random_state = self._random_state if rng is None else get_random_state(rng)
        if self.pretraining:
            return random_state.uniform(ACTION_LOW, ACTION_HIGH, self.action_dim)

        if self.exploration_mode == "gaussian":
            noise = random_state.normal(0.0, self.exploration_sigma, self.action_dim)
            return np.clip(self.policy(state) + noise, ACTION_LOW, ACTION_HIGH)

        epsilon = self.epsilon if epsilon is None else epsilon
        if random_state.rand() < epsilon:
            return random_state.uniform(ACTION_LOW, ACTION_HIGH, self.action_dim)
        return self.policy(state)

    def train_step(self, transition):
        """Store a transition and train when a trigger is due.

        The reward is shifted by -reward_shift before it is stored.

        Returns
        -------
        dict:
            Losses and diagnostics of the training trigger, empty when no
            training took place.
        """
        self.buffer.add(
            transition.s,
            transition.a,
            transition.r - self.reward_shift,
            transition.s_next,
        )
        self.n_steps += 1

        if self.n_steps <= self.pretrain_steps:
            return {}
        if (self.n_steps - self.pretrain_steps) % self.train_every != 0:
            return {}
        return self.update(self.buffer.sample(self.batch_size))

    def update(self, batch):
        """One training trigger on a batch.

        The critic is updated critic_ratio times against one set of targets,
        followed by a single actor update and the soft target update.
        """
        if len(batch) == 0:
            return {}

        diagnostics = self._before_critic(batch)
        targets = self.compute_targets(batch)
        critic_losses = [
            self.update_critic(batch, targets) for _ in range(self.critic_ratio)
        ]
        diagnostics["critic_loss"] = float(np.mean(critic_losses))
        diagnostics.update(self._after_critic(batch))
        diagnostics["actor_loss"] = self.update_actor(batch)
        self.soft_update_targets()

        logging.debug(
            f"{self.name} update {self.n_actor_updates}: "
            f"critic loss {diagnostics['critic_loss']:.5f}"
        )
        return diagnostics

    def _before_critic(self, batch):
        return {}

    def _after_critic(self, batch):
        return {}

    def target_value(self, states):
        """Target-network value Q'(s, pi'(s)) of a batch of states."""
        actions = net_forward(self.nets.target_actor, states)
        q = net_forward(
            self.nets.target_critic, np.concatenate([states, actions], axis=1)
        )
        return q[:, 0]

    @abstractmethod
    def compute_targets(self, batch):
        """Regression targets of the critic for a batch."""
        raise NotImplementedError

    def critic_sample_weight(self, td_errors):
        """Per-sample weights of the critic loss, None for uniform."""
        return None

    def update_critic(self, batch, targets=None):
        if targets is None:
            targets = self.compute_targets(batch)
        x = np.concatenate([batch.states, batch.actions], axis=1)
        q = net_forward(self.nets.critic, x)[:, 0]
        loss, grads = net_backward(
            self.nets.critic,
            x,
            "mse",
            {
                "target": targets[:, None],
                "sample_weight": self.critic_sample_weight(targets - q),
            },
        )
        adam_step(self.nets.critic, grads, self.nets.critic_optim)
        self.n_critic_updates += 1
        return loss

    def update_actor(self, batch):
        """Ascend the critic through the actor: minimize -mean Q(s, pi(s))."""
        loss, grads = net_backward(
            self.nets.actor,
            batch.states,
            "critic_chain",
            {"critic": self.nets.critic},
        )
        adam_step(self.nets.actor, grads, self.nets.actor_optim)
        self.n_actor_updates += 1
        return loss

    def soft_update_targets(self):
        soft_update(self.nets.target_critic, self.nets.critic, self.target_mix)
        soft_update(self.nets.target_actor, self.nets.actor, self.target_mix)

    def named_parameters(self):
        """Every network parameter by name, in a fixed order."""
        return self.nets.named_parameters()

    def load_named_parameters(self, named):
        self.nets.load_named_parameters(named)
