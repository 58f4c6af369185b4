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

__all__ = ["MMQAgent"]

import numpy as np

from maxmax.config import DEFAULT_FORWARD_MODEL
from maxmax.config import DEFAULT_N_SAMPLES
from maxmax.config import DEFAULT_REWARD_SHIFT
from maxmax.config import DEFAULT_TAU_LOWER
from maxmax.config import DEFAULT_TAU_UPPER
from maxmax.exceptions import InvalidArgumentError
from maxmax.exceptions import InvalidConfigurationError
from maxmax.models.agents.base import BaseAgent
from maxmax.models.forward.base import coverage_statistic
from maxmax.models.forward.utils import get_forward_model
from maxmax.nn import adam_init
from maxmax.nn import adam_step
from maxmax.nn import net_backward
from maxmax.nn import net_forward
from maxmax.nn import net_init
from maxmax.utils import get_random_state


class MMQAgent(BaseAgent):
    """MaxMax Q-learning agent.

    Besides the actor and critic, the agent learns a forward model that
    bounds the next states its own action can lead to, and a reward model
    R(s, s'). The critic target is the best value over candidate next states
    drawn from the forward model plus the observed next state:

        y = max_k R(s, c_k) + gamma Q'(c_k, pi'(c_k))

    so the agent evaluates its action as if its partners act optimally.

    Arguments
    ---------
    state_dim: int
        Size of the global state.
    action_dim: int
        Size of the agent's own action.
    n_samples: int
        Candidate next states drawn per transition (M). With 0 the target
        uses the observed next state only.
    tau_lower, tau_upper: float
        Quantile levels of the forward model.
    forward_model: str
        Name of the forward model, "quantile" or "gaussian".
    reward_shift: float
        Constant subtracted from every stored reward.
    **kwargs:
        Arguments of BaseAgent.
    """

    name = "mmq"
    label = "MaxMax Q-learning"

    def __init__(
        self,
        state_dim,
        action_dim,
        n_samples=DEFAULT_N_SAMPLES,
        tau_lower=DEFAULT_TAU_LOWER,
        tau_upper=DEFAULT_TAU_UPPER,
        forward_model=DEFAULT_FORWARD_MODEL,
        reward_shift=DEFAULT_REWARD_SHIFT,
        **kwargs,
    ):
        if n_samples < 0:
            raise InvalidConfigurationError(f"n_samples should be >= 0: {n_samples}")
        if not 0.0 < tau_lower < tau_upper < 1.0:
            raise InvalidConfigurationError(
                f"Quantile levels should satisfy 0 < {tau_lower} < {tau_upper} < 1"
            )
        self.n_samples = int(n_samples)
        self.tau_lower = tau_lower
        self.tau_upper = tau_upper
        self.forward_model = forward_model
        super().__init__(state_dim, action_dim, reward_shift=reward_shift, **kwargs)

        seeds = get_random_state(self._model_seed).randint(0, 2**31 - 1, size=2)
        self.forward = get_forward_model(
            forward_model,
            self.state_dim,
            self.action_dim,
            layer_sizes=self.layer_sizes,
            learning_rate=self.learning_rate,
            tau_lower=tau_lower,
            tau_upper=tau_upper,
            random_state=int(seeds[0]),
        )
        self.nets.reward = net_init(
            (2 * self.state_dim, *self.layer_sizes, 1), int(seeds[1])
        )
        self.nets.reward_optim = adam_init(self.nets.reward, self.learning_rate)

    def update_quantile_models(self, batch):
        """One optimizer step of the forward model on a batch."""
        return self.forward.fit(batch)

    def sample_candidates(self, states, actions, next_states, n_samples=None, rng=None):
        """Candidate next states, the observed next state appended last.

        Returns
        -------
        np.ndarray:
            Shape (n, n_samples + 1, state_dim).
        """
        n_samples = self.n_samples if n_samples is None else n_samples
        return self.forward.sample_candidates(
            states,
            actions,
            next_states,
            n_samples,
            rng=self._random_state if rng is None else get_random_state(rng),
            low=self.state_low,
            high=self.state_high,
        )

    def predicted_reward(self, states, next_states):
        states = np.atleast_2d(states)
        x = np.concatenate([states, np.atleast_2d(next_states)], axis=1)
        return net_forward(self.nets.reward, x)[:, 0]

    def candidate_values(self, states, candidates):
        """R(s, c) + gamma Q'(c, pi'(c)) for every candidate c."""
        states = np.atleast_2d(np.asarray(states, dtype=float))
        candidates = np.asarray(candidates, dtype=float)
        if candidates.ndim == 2:
            candidates = candidates[None]
        n, k, dim = candidates.shape
        if states.shape != (n, dim):
            raise InvalidArgumentError(
                f"States of shape {states.shape} do not match candidates "
                f"of shape {candidates.shape}"
            )
        flat = candidates.reshape(n * k, dim)
        rewards = self.predicted_reward(np.repeat(states, k, axis=0), flat)
        values = rewards + self.gamma * self.target_value(flat)
        return values.reshape(n, k)

    def compute_target(self, states, candidates):
        """Double-max target over candidate next states.

        Ties go to the lowest candidate index.

        Returns
        -------
        (np.ndarray, np.ndarray):
            Targets and the index of the maximizing candidate per row.
        """
        values = self.candidate_values(states, candidates)
        best = np.argmax(values, axis=1)
        return values[np.arange(values.shape[0]), best], best

    def compute_targets(self, batch):
        candidates = self.sample_candidates(
            batch.states, batch.actions, batch.next_states
        )
        targets, _ = self.compute_target(batch.states, candidates)
        return targets

    def update_reward_model(self, batch):
        """One optimizer step of R(s, s') on the stored rewards."""
        x = np.concatenate([batch.states, batch.next_states], axis=1)
        loss, grads = net_backward(
            self.nets.reward, x, "mse", {"target": batch.rewards[:, None]}
        )
        adam_step(self.nets.reward, grads, self.nets.reward_optim)
        return loss

    def coverage_statistic(self, batch):
        """Percentage of next-state coordinates inside the predicted bounds."""
        if len(batch) == 0:
            raise InvalidArgumentError("Coverage needs at least one transition")
        lower, upper = self.forward.bounds(batch.states, batch.actions)
        return coverage_statistic(lower, upper, batch.next_states)

    def bound_width(self, batch):
        return self.forward.bound_width(batch)

    def _before_critic(self, batch):
        losses = self.update_quantile_models(batch)
        loss = losses.get("quantile_loss", losses.get("gaussian_loss"))
        return {"quantile_loss": loss}

    def _after_critic(self, batch):
        return {"reward_loss": self.update_reward_model(batch)}

    def named_parameters(self):
        return {**self.nets.named_parameters(), **self.forward.named_parameters()}

    def load_named_parameters(self, named):
        self.nets.load_named_parameters(named)
        self.forward.load_named_parameters(named)
