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
    "ACTION_HIGH",
    "ACTION_LOW",
    "ADAM_BETA1",
    "ADAM_BETA2",
    "ADAM_EPS",
    "DEFAULT_AGENT",
    "DEFAULT_BATCH_SIZE",
    "DEFAULT_BUFFER_SIZE",
    "DEFAULT_CRITIC_RATIO",
    "DEFAULT_ENV",
    "DEFAULT_EPISODE_LENGTH",
    "DEFAULT_EPSILON",
    "DEFAULT_EVAL_EPISODES",
    "DEFAULT_EVAL_INTERVAL",
    "DEFAULT_EXPLORATION_MODE",
    "DEFAULT_EXPLORATION_SIGMA",
    "DEFAULT_FORWARD_MODEL",
    "DEFAULT_GAMMA",
    "DEFAULT_HYSTERETIC_BETA",
    "DEFAULT_LAYER_SIZES",
    "DEFAULT_LEARNING_RATE",
    "DEFAULT_N_SAMPLES",
    "DEFAULT_OUTPUT_DIR",
    "DEFAULT_PRETRAIN_STEPS",
    "DEFAULT_REWARD_SHIFT",
    "DEFAULT_SEEDS",
    "DEFAULT_TARGET_MIX",
    "DEFAULT_TAU_LOWER",
    "DEFAULT_TAU_UPPER",
    "DEFAULT_TOTAL_STEPS",
    "EXIT_FAILURE",
    "EXIT_SUCCESS",
    "EXIT_THEORY_FAILURE",
    "EXIT_USAGE",
    "LOGVAR_MAX",
    "LOGVAR_MIN",
    "MATRIX_ACTIONS",
    "MATRIX_PAYOFF",
    "SCHEMA",
    "SEQUENTIAL_EPISODE_LENGTH",
    "SUMMARY_WINDOW",
    "WORKERS_ENV_VAR",
]

# action range shared by every environment
ACTION_LOW = -1.0
ACTION_HIGH = 1.0

# network and optimizer defaults
DEFAULT_LAYER_SIZES = (256, 256)
DEFAULT_LEARNING_RATE = 0.001
ADAM_BETA1 = 0.9
ADAM_BETA2 = 0.999
ADAM_EPS = 1e-8
DEFAULT_TARGET_MIX = 0.01

# gaussian head clamp
LOGVAR_MIN = -10.0
LOGVAR_MAX = 5.0

# agent defaults
DEFAULT_AGENT = "mmq"
DEFAULT_FORWARD_MODEL = "quantile"
DEFAULT_GAMMA = 0.99
DEFAULT_EPSILON = 0.1
DEFAULT_EXPLORATION_MODE = "uniform"
DEFAULT_EXPLORATION_SIGMA = 0.1
DEFAULT_BATCH_SIZE = 100
DEFAULT_BUFFER_SIZE = 550000
DEFAULT_PRETRAIN_STEPS = 20000
DEFAULT_CRITIC_RATIO = 10
DEFAULT_N_SAMPLES = 15
DEFAULT_TAU_LOWER = 0.05
DEFAULT_TAU_UPPER = 0.95
DEFAULT_REWARD_SHIFT = 2.0
DEFAULT_HYSTERETIC_BETA = 0.5

# environment defaults
DEFAULT_ENV = "dg"
DEFAULT_EPISODE_LENGTH = 25
SEQUENTIAL_EPISODE_LENGTH = 50

# experiment defaults
DEFAULT_TOTAL_STEPS = 500000
DEFAULT_EVAL_INTERVAL = 2000
DEFAULT_EVAL_EPISODES = 10
DEFAULT_SEEDS = (0, 1, 2, 3, 4, 5, 6, 7)
DEFAULT_OUTPUT_DIR = "output"
SUMMARY_WINDOW = 5
WORKERS_ENV_VAR = "MMQ_WORKERS"

# process exit codes
EXIT_SUCCESS = 0
EXIT_FAILURE = 1
EXIT_THEORY_FAILURE = 2
EXIT_USAGE = 64

# one-shot climbing game
MATRIX_ACTIONS = ("A", "B", "C")
MATRIX_PAYOFF = (
    (3.0, -6.0, -6.0),
    (-6.0, 0.0, 0.0),
    (-6.0, 0.0, 0.0),
)

RUN_STATUSES = ["running", "finished", "failed"]

# the schema describes the content of the experiment.json file in an output
# directory.
SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema",
    "type": "object",
    "title": "The MaxMax experiment file root schema",
    "description": "Settings and per-seed status of one experiment.",
    "default": {},
    "examples": [
        {
            "version": "1.0",
            "env": "dg",
            "algorithm": "mmq",
            "datetimeCreated": "2024-03-25 11:53:30.510461",
            "settings": {"algo.name": "mmq", "env.name": "dg"},
            "runs": [
                {
                    "seed": 0,
                    "status": "finished",
                    "n_eval_points": 250,
                    "error": None,
                }
            ],
        }
    ],
    "required": ["version", "env", "algorithm", "settings", "runs"],
    "properties": {
        "version": {
            "type": "string",
            "description": "The version of maxmax that created the experiment.",
        },
        "env": {
            "type": "string",
            "description": "Name of the environment.",
        },
        "algorithm": {
            "type": "string",
            "description": "Name of the learning agent.",
        },
        "datetimeCreated": {
            "type": ["string", "null"],
            "description": "The date and time of the experiment creation.",
        },
        "settings": {
            "type": "object",
            "description": "Flattened configuration keys and their values.",
        },
        "runs": {
            "type": "array",
            "description": "One entry per seed.",
            "items": {
                "type": "object",
                "required": ["seed", "status"],
                "properties": {
                    "seed": {"type": "integer"},
                    "status": {"type": "string", "enum": RUN_STATUSES},
                    "n_eval_points": {"type": ["integer", "null"]},
                    "error": {"type": ["string", "null"]},
                },
            },
        },
    },
    "additionalProperties": True,
}
