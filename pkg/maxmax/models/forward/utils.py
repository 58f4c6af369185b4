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

__all__ = ["list_forward_models", "get_forward_model_class", "get_forward_model"]

from maxmax.exceptions import InvalidConfigurationError
from maxmax.models.base import filter_kwargs
from maxmax.utils import _entry_points


def list_forward_models():
    """List available forward model classes.

    Returns
    -------
    list:
        Classes of available forward models.
    """
    return [e.load() for e in _entry_points(group="maxmax.models.forward")]


def get_forward_model_class(name):
    """Get class of forward model from string.

    Arguments
    ---------
    name: str
        Name of the model, e.g. 'quantile' or 'gaussian'.

    Returns
    -------
    BaseForwardModel:
        Class corresponding to the name.
    """
    try:
        return _entry_points(group="maxmax.models.forward")[name].load()
    except KeyError:
        raise InvalidConfigurationError(f"Unknown forward model '{name}'")


def get_forward_model(name, *args, random_state=None, **kwargs):
    """Get an instance of a forward model from a string.

    Arguments
    ---------
    name: str
        Name of the forward model.
    *args:
        Arguments for the model, state and action size.
    **kwargs:
        Keyword arguments for the model. Unsupported ones are ignored.

    Returns
    -------
    BaseForwardModel:
        Initialized instance of the forward model.
    """
    model_class = get_forward_model_class(name)
    return model_class(
        *args, random_state=random_state, **filter_kwargs(model_class, kwargs)
    )
