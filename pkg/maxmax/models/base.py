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

__all__ = ["BaseModel", "filter_kwargs"]

import inspect
import logging
from abc import ABC

import numpy as np


def sig_to_param(signature):
    return {
        k: v.default
        for k, v in signature.parameters.items()
        if v.default is not inspect.Parameter.empty
    }


def filter_kwargs(model_class, kwargs):
    """Keep only the keyword arguments the model constructor accepts.

    Arguments with value None are dropped so the model default applies.
    """
    accepted = set()
    for cls in inspect.getmro(model_class):
        if cls is object or "__init__" not in vars(cls):
            continue
        accepted.update(inspect.signature(cls.__init__).parameters)

    result = {}
    for key, value in kwargs.items():
        if value is None:
            continue
        if key in accepted:
            result[key] = value
        else:
            logging.debug(f"{model_class.__name__} ignores parameter '{key}'")
    return result


class BaseModel(ABC):
    """Abstract class for agents, environments and forward models.

    Subclasses set ``name`` (the registry key) and ``label`` (a human readable
    name).
    """

    name = "base"
    label = "Base"

    @property
    def default_param(self):
        """Get the default parameters of the model.

        Returns
        -------
        dict
            Dictionary with parameter: default value
        """
        default_parameters = {}
        for cls in reversed(inspect.getmro(self.__class__)):
            if not issubclass(cls, BaseModel) or "__init__" not in vars(cls):
                continue
            default_parameters.update(sig_to_param(inspect.signature(cls.__init__)))
        default_parameters.pop("random_state", None)
        return default_parameters

    @property
    def param(self):
        """Get the (assigned) parameters of the model.

        Returns
        -------
        dict
            Dictionary with parameter: current value.
        """
        parameters = self.default_param
        for par in list(parameters):
            try:
                parameters[par] = getattr(self, par)
            except AttributeError:
                del parameters[par]
                continue
            if isinstance(parameters[par], np.integer):
                parameters[par] = int(parameters[par])
            elif isinstance(parameters[par], np.floating):
                parameters[par] = float(parameters[par])

        return parameters
