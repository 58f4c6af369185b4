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

__all__ = ["AdamState", "adam_init", "adam_step"]

from dataclasses import dataclass

import numpy as np

from maxmax.config import ADAM_BETA1
from maxmax.config import ADAM_BETA2
from maxmax.config import ADAM_EPS
from maxmax.config import DEFAULT_LEARNING_RATE
from maxmax.exceptions import InvalidArgumentError
from maxmax.exceptions import ShapeError
from maxmax.utils import check_finite


@dataclass
class AdamState:
    """First and second moment estimates, one entry per network parameter."""

    m: np.ndarray
    v: np.ndarray
    t: int = 0
    learning_rate: float = DEFAULT_LEARNING_RATE
    beta1: float = ADAM_BETA1
    beta2: float = ADAM_BETA2
    eps: float = ADAM_EPS


def adam_init(net, learning_rate=DEFAULT_LEARNING_RATE):
    if learning_rate <= 0:
        raise InvalidArgumentError(f"Learning rate should be positive: {learning_rate}")
    return AdamState(
        m=np.zeros(net.n_parameters),
        v=np.zeros(net.n_parameters),
        learning_rate=float(learning_rate),
    )


def adam_step(net, grads, state):
    """Apply one bias-corrected Adam update to the network in place.

    Arguments
    ---------
    net: FeedForwardNet
        Network to update.
    grads: GradientBundle
        Gradients for every weight and bias of the network.
    state: AdamState
        Optimizer state, updated in place.

    Returns
    -------
    (FeedForwardNet, AdamState):
        The updated network and optimizer state.
    """
    params = net.parameters()
    grad_list = grads.parameters()
    if len(grad_list) != len(params) or any(
        g.shape != p.shape for g, p in zip(grad_list, params)
    ):
        raise ShapeError("Gradient bundle does not match the network")

    g = check_finite(np.concatenate([x.ravel() for x in grad_list]), "gradient")
    if g.size != state.m.size:
        raise ShapeError("Optimizer state does not match the network")

    state.t += 1
    state.m = state.beta1 * state.m + (1.0 - state.beta1) * g
    state.v = state.beta2 * state.v + (1.0 - state.beta2) * g**2
    m_hat = state.m / (1.0 - state.beta1**state.t)
    v_hat = state.v / (1.0 - state.beta2**state.t)
    step = state.learning_rate * m_hat / (np.sqrt(v_hat) + state.eps)

    offset = 0
    for k in range(len(net.weights)):
        for arrays in (net.weights, net.biases):
            size = arrays[k].size
            arrays[k] = arrays[k] - step[offset : offset + size].reshape(
                arrays[k].shape
            )
            offset += size

    for p in net.parameters():
        check_finite(p, "network parameter")
    return net, state
