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

__all__ = ["GaussianForwardModel"]

import numpy as np
from scipy.stats import norm

from maxmax.config import DEFAULT_LAYER_SIZES
from maxmax.config import DEFAULT_LEARNING_RATE
from maxmax.config import DEFAULT_TAU_LOWER
from maxmax.config import DEFAULT_TAU_UPPER
from maxmax.config import LOGVAR_MAX
from maxmax.config import LOGVAR_MIN
from maxmax.models.forward.base import BaseForwardModel
from maxmax.nn import adam_init
from maxmax.nn import adam_step
from maxmax.nn import net_backward
from maxmax.nn import net_forward
from maxmax.nn import net_init
from maxmax.utils import get_random_state


class GaussianForwardModel(BaseForwardModel):
    """Diagonal Gaussian over the next state, trained by likelihood.

    Candidates are Gaussian draws instead of uniform draws between bounds.
    The reported bounds are the tau_lower and tau_upper quantiles of the
    predicted Gaussian.
    """

    name = "gaussian"
    label = "Gaussian next state"

    def __init__(
        self,
        state_dim,
        action_dim,
        layer_sizes=DEFAULT_LAYER_SIZES,
        learning_rate=DEFAULT_LEARNING_RATE,
        tau_lower=DEFAULT_TAU_LOWER,
        tau_upper=DEFAULT_TAU_UPPER,
        random_state=None,
    ):
        super().__init__(
            state_dim,
            action_dim,
            layer_sizes=layer_sizes,
            learning_rate=learning_rate,
            tau_lower=tau_lower,
            tau_upper=tau_upper,
            random_state=random_state,
        )
        sizes = (
            self.state_dim + self.action_dim,
            *self.layer_sizes,
            2 * self.state_dim,
        )
        self.net = net_init(sizes, int(self._random_state.randint(0, 2**31 - 1)))
        self.optim = adam_init(self.net, learning_rate)

    def predict(self, states, actions):
        """Mean and standard deviation of the next state."""
        output = net_forward(self.net, self._inputs(states, actions))
        mean = output[:, : self.state_dim]
        logvar = np.clip(output[:, self.state_dim :], LOGVAR_MIN, LOGVAR_MAX)
        return mean, np.exp(0.5 * logvar)

    def fit(self, batch):
        if len(batch) == 0:
            return {}
        loss, grads = net_backward(
            self.net,
            self._inputs(batch.states, batch.actions),
            "gaussian_nll",
            {"target": batch.next_states},
        )
        adam_step(self.net, grads, self.optim)
        return {"gaussian_loss": loss}

    def bounds(self, states, actions):
        mean, std = self.predict(states, actions)
        return (
            mean + norm.ppf(self.tau_lower) * std,
            mean + norm.ppf(self.tau_upper) * std,
        )

    def sample_candidates(
        self, states, actions, next_states, n_samples, rng=None, low=None, high=None
    ):
        """Gaussian candidate next states with the observed one appended last."""
        random_state = get_random_state(self._random_state if rng is None else rng)
        next_states = np.atleast_2d(np.asarray(next_states, dtype=float))
        mean, std = self.predict(states, actions)
        n, dim = next_states.shape
        noise = random_state.normal(size=(n, n_samples, dim))
        samples = mean[:, None, :] + std[:, None, :] * noise
        if low is not None or high is not None:
            samples = np.clip(samples, low, high)
        return np.concatenate([samples, next_states[:, None, :]], axis=1)

    def named_parameters(self):
        return self.net.named_parameters("forward.gaussian.")

    def load_named_parameters(self, named):
        self.net.load_named_parameters(named, "forward.gaussian.")
