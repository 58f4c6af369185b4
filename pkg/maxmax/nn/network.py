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

"""Fully connected ReLU networks with analytic backpropagation."""

__all__ = [
    "FeedForwardNet",
    "GradientBundle",
    "net_backward",
    "net_forward",
    "net_init",
    "soft_update",
]

from dataclasses import dataclass
from dataclasses import field
from typing import Optional

import numpy as np

from maxmax.exceptions import InvalidArgumentError
from maxmax.exceptions import InvalidConfigurationError
from maxmax.exceptions import ShapeError
from maxmax.nn.losses import LOSS_HEADS
from maxmax.utils import check_finite
from maxmax.utils import get_random_state

OUTPUT_ACTIVATIONS = ("linear", "tanh")


@dataclass
class FeedForwardNet:
    """Weights and biases of a fully connected network.

    Hidden layers use ReLU. The output layer is linear, or a tanh scaled by
    ``output_scale`` for bounded outputs such as actions. Weight k has shape
    (layer_sizes[k + 1], layer_sizes[k]).
    """

    layer_sizes: tuple
    weights: list
    biases: list
    output_activation: str = "linear"
    output_scale: float = 1.0

    @property
    def input_dim(self):
        return self.layer_sizes[0]

    @property
    def output_dim(self):
        return self.layer_sizes[-1]

    @property
    def n_parameters(self):
        return int(sum(w.size + b.size for w, b in zip(self.weights, self.biases)))

    def parameters(self):
        """Parameter arrays in order W0, b0, W1, b1, ..."""
        result = []
        for w, b in zip(self.weights, self.biases):
            result.extend([w, b])
        return result

    def named_parameters(self, prefix=""):
        named = {}
        for k, (w, b) in enumerate(zip(self.weights, self.biases)):
            named[f"{prefix}W{k}"] = w
            named[f"{prefix}b{k}"] = b
        return named

    def load_named_parameters(self, named, prefix=""):
        for k in range(len(self.weights)):
            w = np.asarray(named[f"{prefix}W{k}"], dtype=float)
            b = np.asarray(named[f"{prefix}b{k}"], dtype=float)
            if w.shape != self.weights[k].shape or b.shape != self.biases[k].shape:
                raise ShapeError(f"Parameter shapes of layer {k} do not match")
            self.weights[k] = w.copy()
            self.biases[k] = b.copy()

    def copy(self):
        return FeedForwardNet(
            layer_sizes=tuple(self.layer_sizes),
            weights=[w.copy() for w in self.weights],
            biases=[b.copy() for b in self.biases],
            output_activation=self.output_activation,
            output_scale=self.output_scale,
        )


@dataclass
class GradientBundle:
    """Gradients for every weight and bias, optionally for the input."""

    weights: list
    biases: list
    input: Optional[np.ndarray] = field(default=None)

    def parameters(self):
        result = []
        for w, b in zip(self.weights, self.biases):
            result.extend([w, b])
        return result

    def norm(self):
        return float(np.sqrt(sum(np.sum(g**2) for g in self.parameters())))


def net_init(
    layer_sizes, rng_seed=None, output_activation="linear", output_scale=1.0
):
    """Initialize a network with Xavier-uniform weights and zero biases.

    Arguments
    ---------
    layer_sizes: list of int
        Input size, hidden sizes and output size. At least two entries.
    rng_seed: int, SeededRandomState
        Seed or random state used to draw the weights.
    output_activation: str
        "linear" or "tanh".
    output_scale: float
        Multiplier applied after the tanh output.

    Returns
    -------
    FeedForwardNet:
        The initialized network.
    """
    layer_sizes = tuple(int(n) for n in layer_sizes)
    if len(layer_sizes) < 2:
        raise InvalidConfigurationError(
            "A network needs at least an input and output size"
        )
    if any(n < 1 for n in layer_sizes):
        raise InvalidConfigurationError(
            f"Layer sizes should be positive: {layer_sizes}"
        )
    if output_activation not in OUTPUT_ACTIVATIONS:
        raise InvalidConfigurationError(
            f"Unknown output activation '{output_activation}'"
        )

    random_state = get_random_state(rng_seed)
    weights = []
    biases = []
    for fan_in, fan_out in zip(layer_sizes[:-1], layer_sizes[1:]):
        limit = np.sqrt(6.0 / (fan_in + fan_out))
        weights.append(random_state.uniform(-limit, limit, size=(fan_out, fan_in)))
        biases.append(np.zeros(fan_out))

    return FeedForwardNet(
        layer_sizes=layer_sizes,
        weights=weights,
        biases=biases,
        output_activation=output_activation,
        output_scale=float(output_scale),
    )


def _as_batch(net, x):
    x = np.asarray(x, dtype=float)
    single = x.ndim == 1
    x = np.atleast_2d(x)
    if x.ndim != 2 or x.shape[1] != net.input_dim:
        raise ShapeError(
            f"Network expects inputs of size {net.input_dim}, got shape {x.shape}"
        )
    return x, single


def _forward_cache(net, x):
    """Forward pass keeping the activations needed by backprop."""
    activations = [x]
    h = x
    n_layers = len(net.weights)
    for k, (w, b) in enumerate(zip(net.weights, net.biases)):
        z = h @ w.T + b
        if k < n_layers - 1:
            h = np.maximum(z, 0.0)
        elif net.output_activation == "tanh":
            h = net.output_scale * np.tanh(z)
        else:
            h = z
        activations.append(h)
    return activations


def net_forward(net, x):
    """Evaluate the network on one input vector or a batch of rows."""
    x, single = _as_batch(net, x)
    y = _forward_cache(net, x)[-1]
    return y[0] if single else y


def _backprop(net, activations, grad_output):
    """Push dL/dy back through the layers.

    Returns the parameter gradients and dL/dx.
    """
    n_layers = len(net.weights)
    grad_w = [None] * n_layers
    grad_b = [None] * n_layers

    y = activations[-1]
    if net.output_activation == "tanh":
        t = y / net.output_scale
        delta = grad_output * net.output_scale * (1.0 - t**2)
    else:
        delta = grad_output

    for k in reversed(range(n_layers)):
        h_in = activations[k]
        grad_w[k] = delta.T @ h_in
        grad_b[k] = delta.sum(axis=0)
        grad_in = delta @ net.weights[k]
        if k > 0:
            delta = grad_in * (activations[k] > 0.0)

    return grad_w, grad_b, grad_in


def _critic_chain(net, x, activations, critic):
    """Loss -mean Q(x, net(x)) for an actor net and a critic net."""
    action = activations[-1]
    critic_input = np.concatenate([x, action], axis=1)
    if critic_input.shape[1] != critic.input_dim:
        raise ShapeError(
            f"Critic expects inputs of size {critic.input_dim}, "
            f"got {critic_input.shape[1]}"
        )
    critic_activations = _forward_cache(critic, critic_input)
    q = critic_activations[-1]
    n = x.shape[0]
    loss = -float(np.mean(q))

    _, _, grad_critic_in = _backprop(
        critic, critic_activations, np.full_like(q, -1.0 / n)
    )
    state_dim = x.shape[1]
    return loss, grad_critic_in[:, state_dim:], grad_critic_in[:, :state_dim]


def net_backward(net, x, loss_head, loss_args=None, input_grad=False):
    """Loss value and analytic gradients of a loss head.

    Arguments
    ---------
    net: FeedForwardNet
        The network to differentiate.
    x: np.ndarray
        Input vector or batch of input rows.
    loss_head: str
        One of "mse", "pinball", "gaussian_nll" or "critic_chain".
    loss_args: dict
        Keyword arguments of the head. "mse" takes target and an optional
        sample_weight, "pinball" takes tau, target and reduction,
        "gaussian_nll" takes target and "critic_chain" takes critic.
    input_grad: bool
        Also return the gradient with respect to x.

    Returns
    -------
    (float, GradientBundle):
        The loss and its gradients.
    """
    loss_args = {} if loss_args is None else dict(loss_args)
    x, single = _as_batch(net, x)
    activations = _forward_cache(net, x)
    output = activations[-1]

    extra_input_grad = None
    if loss_head == "critic_chain":
        try:
            critic = loss_args.pop("critic")
        except KeyError:
            raise InvalidArgumentError("critic_chain head needs a 'critic' network")
        loss, grad_output, extra_input_grad = _critic_chain(
            net, x, activations, critic
        )
    elif loss_head in LOSS_HEADS:
        loss, grad_output = LOSS_HEADS[loss_head](output, **loss_args)
    else:
        raise InvalidConfigurationError(f"Unknown loss head '{loss_head}'")

    grad_w, grad_b, grad_in = _backprop(net, activations, grad_output)
    for g in grad_w + grad_b:
        check_finite(g, "gradient")

    bundle = GradientBundle(weights=grad_w, biases=grad_b)
    if input_grad:
        if extra_input_grad is not None:
            grad_in = grad_in + extra_input_grad
        bundle.input = grad_in[0] if single else grad_in

    return check_finite(loss, "loss"), bundle


def soft_update(target, online, mix):
    """Move target parameters toward the online ones in place.

    target <- (1 - mix) * target + mix * online
    """
    if not 0.0 <= mix <= 1.0:
        raise InvalidArgumentError(f"Mixing coefficient should be in [0, 1]: {mix}")
    if tuple(target.layer_sizes) != tuple(online.layer_sizes):
        raise ShapeError("Target and online networks differ in shape")
    for k in range(len(target.weights)):
        target.weights[k] = (1.0 - mix) * target.weights[k] + mix * online.weights[k]
        target.biases[k] = (1.0 - mix) * target.biases[k] + mix * online.biases[k]
    return target
