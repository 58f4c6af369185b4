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

from maxmax.nn.losses import loss_gaussian_nll
from maxmax.nn.losses import loss_pinball
from maxmax.nn.network import FeedForwardNet
from maxmax.nn.network import GradientBundle
from maxmax.nn.network import net_backward
from maxmax.nn.network import net_forward
from maxmax.nn.network import net_init
from maxmax.nn.network import soft_update
from maxmax.nn.optim import AdamState
from maxmax.nn.optim import adam_init
from maxmax.nn.optim import adam_step

__all__ = [
    "AdamState",
    "FeedForwardNet",
    "GradientBundle",
    "adam_init",
    "adam_step",
    "loss_gaussian_nll",
    "loss_pinball",
    "net_backward",
    "net_forward",
    "net_init",
    "soft_update",
]
