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

"""Loss heads for the feed-forward networks.

Every head maps the network output ``y`` (rows are samples) and its loss
arguments to a scalar loss and the gradient of that loss with respect to ``y``.
"""

__all__ = [
    "LOSS_HEADS",
    "gaussian_nll_head",
    "loss_gaussian_nll",
    "loss_pinball",
    "mse_head",
    "pinball_head",
]

import numpy as np

from maxmax.config import LOGVAR_MAX
from maxmax.config import LOGVAR_MIN
from maxmax.exceptions import InvalidArgumentError
from maxmax.exceptions import InvalidConfigurationError
from maxmax.exceptions import ShapeError

_LOG_2PI = np.log(2.0 * np.pi)


def _check_tau(tau):
    if not 0.0 < tau < 1.0:
        raise InvalidConfigurationError(
            f"Quantile level tau should be in (0, 1), got {tau}"
        )


def _pinball(tau, residual):
    return np.where(residual >= 0, tau * residual, (tau - 1.0) * residual)


def loss_pinball(tau, prediction, target):
    """Pinball loss of a prediction vector against a target vector.

    The residual is ``prediction - target``; positive residuals are weighted
    by tau and negative residuals by 1 - tau. The per-dimension losses are
    summed.

    Arguments
    ---------
    tau: float
        Quantile level in (0, 1).
    prediction: np.ndarray
        Predicted vector.
    target: np.ndarray
        Target vector of the same shape.

    Returns
    -------
    float:
        Nonnegative loss.
    """
    _check_tau(tau)
    prediction = np.asarray(prediction, dtype=float)
    target = np.asarray(target, dtype=float)
    if prediction.shape != target.shape:
        raise ShapeError(
            f"Prediction shape {prediction.shape} does not match "
            f"target shape {target.shape}"
        )
    return float(np.sum(_pinball(tau, prediction - target)))


def _split_gaussian(output, dim):
    mean = output[..., :dim]
    raw_logvar = output[..., dim:]
    logvar = np.clip(raw_logvar, LOGVAR_MIN, LOGVAR_MAX)
    return mean, raw_logvar, logvar


def loss_gaussian_nll(mean, logvar, target):
    """Negative log-likelihood of a target under a diagonal Gaussian.

    The log-variance is clamped to [-10, 5] before use.
    """
    mean = np.asarray(mean, dtype=float)
    logvar = np.clip(np.asarray(logvar, dtype=float), LOGVAR_MIN, LOGVAR_MAX)
    target = np.asarray(target, dtype=float)
    if mean.shape != target.shape or logvar.shape != target.shape:
        raise ShapeError("Mean, log-variance and target should share one shape")
    nll = 0.5 * (_LOG_2PI + logvar + (target - mean) ** 2 / np.exp(logvar))
    return float(np.sum(nll))


def _target_like(output, target):
    target = np.asarray(target, dtype=float)
    if target.shape != output.shape:
        try:
            target = target.reshape(output.shape)
        except ValueError:
            raise ShapeError(
                f"Target shape {target.shape} does not match "
                f"output shape {output.shape}"
            )
    return target


def mse_head(output, target, sample_weight=None):
    """Mean squared error, optionally weighted per sample."""
    target = _target_like(output, target)
    diff = output - target
    if sample_weight is None:
        weight = 1.0
    else:
        weight = np.asarray(sample_weight, dtype=float).reshape(-1, 1)
    loss = np.sum(weight * diff**2) / diff.size
    grad = 2.0 * weight * diff / diff.size
    return float(loss), grad


def pinball_head(output, target, tau, reduction="mean"):
    """Pinball loss over a batch.

    With reduction "mean" the loss is averaged over samples and dimensions;
    with "sum" it is summed over dimensions and averaged over samples.
    """
    _check_tau(tau)
    target = _target_like(output, target)
    residual = output - target
    if reduction == "mean":
        scale = 1.0 / residual.size
    elif reduction == "sum":
        scale = 1.0 / residual.shape[0]
    else:
        raise InvalidArgumentError(f"Unknown reduction '{reduction}'")

    loss = np.sum(_pinball(tau, residual)) * scale
    grad = np.where(residual > 0, tau, np.where(residual < 0, tau - 1.0, 0.0))
    return float(loss), grad * scale


def gaussian_nll_head(output, target):
    """Gaussian negative log-likelihood for a mean and log-variance output.

    The first half of the output columns is the mean, the second half the
    raw log-variance. The loss is summed over dimensions and averaged over
    samples. Clamped log-variances receive no gradient.
    """
    target = np.asarray(target, dtype=float)
    dim = target.shape[-1]
    if output.shape[-1] != 2 * dim:
        raise ShapeError(
            f"Gaussian head needs {2 * dim} outputs, got {output.shape[-1]}"
        )
    target = target.reshape(output.shape[0], dim)
    mean, raw_logvar, logvar = _split_gaussian(output, dim)
    inv_var = np.exp(-logvar)
    sq = (target - mean) ** 2
    n = output.shape[0]

    loss = 0.5 * np.sum(_LOG_2PI + logvar + sq * inv_var) / n

    grad_mean = (mean - target) * inv_var / n
    inside = (raw_logvar >= LOGVAR_MIN) & (raw_logvar <= LOGVAR_MAX)
    grad_logvar = np.where(inside, 0.5 * (1.0 - sq * inv_var) / n, 0.0)
    return float(loss), np.concatenate([grad_mean, grad_logvar], axis=-1)


LOSS_HEADS = {
    "mse": mse_head,
    "pinball": pinball_head,
    "gaussian_nll": gaussian_nll_head,
}
