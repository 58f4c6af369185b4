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

__all__ = ["HyDDPGAgent"]

import numpy as np

from maxmax.config import DEFAULT_HYSTERETIC_BETA
from maxmax.exceptions import InvalidConfigurationError
from maxmax.models.agents.iddpg import IDDPGAgent


class HyDDPGAgent(IDDPGAgent):
    """Hysteretic independent DDPG.

    Critic errors where the target falls below the current estimate are
    learned with the smaller rate beta: their squared error carries weight
    beta, so their gradient is scaled by beta. With beta = 1 the agent is
    identical to IDDPG.

    Arguments
    ---------
    beta: float
        Relative learning rate of pessimistic errors, in (0, 1].
    **kwargs:
        Arguments of IDDPGAgent.
    """

    name = "hyddpg"
    label = "Hysteretic DDPG"

    def __init__(self, state_dim, action_dim, beta=DEFAULT_HYSTERETIC_BETA, **kwargs):
        if not 0.0 < beta <= 1.0:
            raise InvalidConfigurationError(f"beta should be in (0, 1]: {beta}")
        self.beta = beta
        super().__init__(state_dim, action_dim, **kwargs)

    def critic_sample_weight(self, td_errors):
        return np.where(td_errors > 0, 1.0, self.beta)
