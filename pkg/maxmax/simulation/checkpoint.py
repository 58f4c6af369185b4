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

"""Checkpoints of network parameters.

A checkpoint is a pair of files: ``<stem>.bin`` holds all tensors as
little-endian float64 values, one after the other, and ``<stem>.manifest``
lists one ``name shape`` line per tensor in the same order.
"""

__all__ = [
    "load_agent_checkpoint",
    "load_checkpoint",
    "save_agent_checkpoint",
    "save_checkpoint",
]

import logging
from pathlib import Path

import numpy as np

from maxmax.exceptions import ShapeError

CHECKPOINT_DTYPE = "<f8"


def _paths(stem):
    stem = Path(stem)
    return stem.with_name(stem.name + ".bin"), stem.with_name(stem.name + ".manifest")


def _format_shape(shape):
    return ",".join(str(n) for n in shape)


def _parse_shape(text):
    return tuple(int(n) for n in text.split(",") if n != "")


def save_checkpoint(named, stem):
    """Write named tensors to a checkpoint.

    Arguments
    ---------
    named: dict
        Tensor name to np.ndarray, written in insertion order.
    stem: str, Path
        Path of the checkpoint without suffix.
    """
    bin_path, manifest_path = _paths(stem)
    bin_path.parent.mkdir(parents=True, exist_ok=True)

    lines = []
    chunks = []
    for name, values in named.items():
        if " " in name:
            raise ValueError(f"Tensor names cannot contain spaces: '{name}'")
        values = np.asarray(values, dtype=float)
        lines.append(f"{name} {_format_shape(values.shape)}\n")
        chunks.append(values.ravel().astype(CHECKPOINT_DTYPE))

    data = np.concatenate(chunks) if chunks else np.zeros(0, CHECKPOINT_DTYPE)
    with open(bin_path, "wb") as f:
        f.write(data.tobytes())
    with open(manifest_path, "w", encoding="utf-8", newline="\n") as f:
        f.writelines(lines)

    logging.debug(f"Saved {len(lines)} tensors to {bin_path}")


def load_checkpoint(stem):
    """Read a checkpoint written by save_checkpoint.

    Returns
    -------
    dict:
        Tensor name to np.ndarray, in manifest order.
    """
    bin_path, manifest_path = _paths(stem)

    with open(manifest_path, encoding="utf-8") as f:
        entries = [line.split(" ") for line in f.read().splitlines() if line]
    data = np.frombuffer(bin_path.read_bytes(), dtype=CHECKPOINT_DTYPE)

    named = {}
    offset = 0
    for name, shape_text in entries:
        shape = _parse_shape(shape_text)
        size = int(np.prod(shape, dtype=int))
        if offset + size > data.size:
            raise ShapeError(f"Checkpoint {bin_path} is shorter than its manifest")
        named[name] = data[offset : offset + size].astype(float).reshape(shape)
        offset += size

    if offset != data.size:
        raise ShapeError(f"Checkpoint {bin_path} is longer than its manifest")
    return named


def save_agent_checkpoint(agent, stem):
    save_checkpoint(agent.named_parameters(), stem)


def load_agent_checkpoint(agent, stem):
    """Load a checkpoint into an agent with the same architecture."""
    agent.load_named_parameters(load_checkpoint(stem))
    return agent
