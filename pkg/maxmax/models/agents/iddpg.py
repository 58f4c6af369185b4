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

__all__ = ["IDDPGAgent"]

from maxmax.models.agents.base import BaseAgent


class IDDPGAgent(BaseAgent):
    """Independent DDPG.

    The critic regresses on r + gamma Q'(s', pi'(s')) with the observed next
    state only.
    """

    name = "iddpg"
    label = "Independent DDPG"

    def compute_targets(self, batch):
        return batch.rewards + self.gamma * self.target_value(batch.next_states)
