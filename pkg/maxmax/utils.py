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

__all__ = [
    "check_finite",
    "derive_seeds",
    "get_n_workers",
    "get_random_state",
]

import logging
import os
import sys
from numbers import Integral

import numpy as np

from maxmax.config import WORKERS_ENV_VAR
from maxmax.exceptions import InvalidConfigurationError
from maxmax.exceptions import NumericFailureError

if sys.version_info >= (3, 10):
    from importlib.metadata import entry_points as _entry_points  # noqa
else:
    from importlib_metadata import entry_points as _entry_points  # noqa


def get_random_state(seed=None):
    """Constructor for the seeded random number generator.

    This is the preferred method of instantiating the SeededRandomState class.
    Every component that draws random numbers (networks, buffers, exploration,
    environments) receives its own SeededRandomState, so a run is reproducible
    from its integer seed alone.

    Parameters
    ----------
    seed : int | SeededRandomState | None, optional
        Seed for the random generator, or random generator itself. If this is
        None, a seed is generated randomly. By default None.

    Returns
    -------
    SeededRandomState
        A random number generator, seeded by the provided seed.
    """
    if isinstance(seed, SeededRandomState):
        return seed
    if seed is None:
        rng = np.random.default_rng()
        seed = int(rng.integers(low=0, high=2**32))
    if isinstance(seed, bool) or not isinstance(seed, Integral):
        raise ValueError("'seed' should be of type int, SeededRandomState or None")
    return SeededRandomState(np.random.RandomState(int(seed)), int(seed))


class SeededRandomState(np.random.RandomState):
    def __init__(self, random_state, seed):
        """Random State that is always seeded.

        Never instantiate this class directly, always use the
        `get_random_state` function.

        Parameters
        ----------
        random_state : np.random.RandomState
            Random number generator that has been instantiated using
            `np.random.RandomState(seed)`.
        seed : int
            Integer that has been used as the seed of the generator.
        """
        super().__init__(random_state.get_state()[1][0])
        self.seed = seed


def derive_seeds(seed, n):
    """Draw n independent child seeds from a parent seed."""
    random_state = get_random_state(seed)
    return [int(x) for x in random_state.randint(0, 2**31 - 1, size=n)]


def get_n_workers(default=1):
    """Number of worker processes, overridden by MMQ_WORKERS."""
    value = os.environ.get(WORKERS_ENV_VAR, None)
    if value is None or value == "":
        return default
    try:
        n_workers = int(value)
    except ValueError:
        raise InvalidConfigurationError(
            f"{WORKERS_ENV_VAR} should be an integer, got '{value}'."
        )
    if n_workers < 1:
        raise InvalidConfigurationError(f"{WORKERS_ENV_VAR} should be at least 1.")
    logging.debug(f"Using {n_workers} workers from {WORKERS_ENV_VAR}.")
    return n_workers


def check_finite(values, what="value"):
    """Raise NumericFailureError if an array holds NaN or inf."""
    if not np.all(np.isfinite(values)):
        raise NumericFailureError(f"Non-finite {what} encountered.")
    return values
