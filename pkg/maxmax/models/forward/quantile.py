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

__all__ = ["QuantileForwardModel"]

import numpy as np

from maxmax.config import DEFAULT_LAYER_SIZES
from maxmax.config import DEFAULT_LEARNING_RATE
from maxmax.config import DEFAULT_TAU_LOWER
from maxmax.config import DEFAULT_TAU_UPPER
from maxmax.models.forward.base import BaseForwardModel
from maxmax.models.forward.base import sample_uniform_candidates
from maxmax.nn import adam_init
from maxmax.nn import adam_step
from maxmax.nn import net_backward
from maxmax.nn import net_forward
from maxmax.nn import net_init


class QuantileForwardModel(BaseForwardModel):
    """Pair of quantile regressors bounding each next-state coordinate.

    Arguments
    ---------
    state_dim: int
        Size of the state vector.
    action_dim: int
        Size of the agent's own action.
    layer_sizes: tuple
        Hidden layer sizes of both regressors.
    learning_rate: float
        Adam learning rate.
    tau_lower: float
        Quantile level of the first regressor.
    tau_upper: float
        Quantile level of the second regressor.
    reduction: str
        "mean" averages the pinball loss over state dimensions and batch,
        "sum" sums over dimensions and averages over the batch.
    random_state: int, SeededRandomState
        Random state for initialization and candidate draws.
    """

    name = "quantile"
    label = "Quantile bounds"

    def __init__(
        self,
        state_dim,
        action_dim,
        layer_sizes=DEFAULT_LAYER_SIZES,
        learning_rate=DEFAULT_LEARNING_RATE,
        tau_lower=DEFAULT_TAU_LOWER,
        tau_upper=DEFAULT_TAU_UPPER,
        reduction="mean",
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
        self.reduction = reduction

        sizes = (self.state_dim + self.action_dim, *self.layer_sizes, self.state_dim)
        seeds = self._random_state.randint(0, 2**31 - 1, size=2)
        self.lower_net = net_init(sizes, int(seeds[0]))
        self.upper_net = net_init(sizes, int(seeds[1]))
        self.lower_optim = adam_init(self.lower_net, learning_rate)
        self.upper_optim = adam_init(self.upper_net, learning_rate)

    def fit(self, batch):
        if len(batch) == 0:
            return {}
        x = self._inputs(batch.states, batch.actions)
        losses = {}
        # the pinball loss at level 1 - q is minimized by the q-quantile
        for key, net, optim, tau in (
            ("lower_loss", self.lower_net, self.lower_optim, 1.0 - self.tau_lower),
            ("upper_loss", self.upper_net, self.upper_optim, 1.0 - self.tau_upper),
        ):
            loss, grads = net_backward(
                net,
                x,
                "pinball",
                {"tau": tau, "target": batch.next_states, "reduction": self.reduction},
            )
            adam_step(net, grads, optim)
            losses[key] = loss
        losses["quantile_loss"] = 0.5 * (losses["lower_loss"] + losses["upper_loss"])
        return losses

    def bounds(self, states, actions):
        x = self._inputs(states, actions)
        first = net_forward(self.lower_net, x)
        second = net_forward(self.upper_net, x)
        # crossed predictions are swapped per dimension
        return np.minimum(first, second), np.maximum(first, second)

    def sample_candidates(
        self, states, actions, next_states, n_samples, rng=None, low=None, high=None
    ):
        lower, upper = self.bounds(states, actions)
        return sample_uniform_candidates(
            lower,
            upper,
            np.atleast_2d(np.asarray(next_states, dtype=float)),
            n_samples,
            rng=self._random_state if rng is None else rng,
            low=low,
            high=high,
        )

    def named_parameters(self):
        return {
            **self.lower_net.named_parameters("forward.lower."),
            **self.upper_net.named_parameters("forward.upper."),
        }

    def load_named_parameters(self, named):
        self.lower_net.load_named_parameters(named, "forward.lower.")
        self.upper_net.load_named_parameters(named, "forward.upper.")
