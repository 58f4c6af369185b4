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
    "AlgoSettings",
    "EnvSettings",
    "ExperimentSettings",
    "RunSettings",
    "load_config",
]

try:
    import tomllib
except ImportError:
    import tomli as tomllib

import logging
from dataclasses import dataclass
from dataclasses import field
from dataclasses import fields
from dataclasses import replace
from pathlib import Path
from typing import Optional
from typing import get_args

from maxmax.config import DEFAULT_AGENT
from maxmax.config import DEFAULT_BATCH_SIZE
from maxmax.config import DEFAULT_BUFFER_SIZE
from maxmax.config import DEFAULT_CRITIC_RATIO
from maxmax.config import DEFAULT_ENV
from maxmax.config import DEFAULT_EPSILON
from maxmax.config import DEFAULT_EVAL_EPISODES
from maxmax.config import DEFAULT_EVAL_INTERVAL
from maxmax.config import DEFAULT_EXPLORATION_MODE
from maxmax.config import DEFAULT_EXPLORATION_SIGMA
from maxmax.config import DEFAULT_FORWARD_MODEL
from maxmax.config import DEFAULT_GAMMA
from maxmax.config import DEFAULT_HYSTERETIC_BETA
from maxmax.config import DEFAULT_LAYER_SIZES
from maxmax.config import DEFAULT_LEARNING_RATE
from maxmax.config import DEFAULT_N_SAMPLES
from maxmax.config import DEFAULT_OUTPUT_DIR
from maxmax.config import DEFAULT_PRETRAIN_STEPS
from maxmax.config import DEFAULT_REWARD_SHIFT
from maxmax.config import DEFAULT_SEEDS
from maxmax.config import DEFAULT_TARGET_MIX
from maxmax.config import DEFAULT_TAU_LOWER
from maxmax.config import DEFAULT_TAU_UPPER
from maxmax.config import DEFAULT_TOTAL_STEPS
from maxmax.exceptions import ConfigParseError
from maxmax.exceptions import InvalidConfigurationError
from maxmax.exceptions import UnknownKeyError

SECTIONS = ("env", "algo", "run")

# short names accepted in config files
KEY_ALIASES = {
    "algo.M": "algo.n_samples",
    "algo.c": "algo.reward_shift",
    "algo.layer_sizes": "algo.layers",
}

_TRUE = ("true", "yes", "on", "1")
_FALSE = ("false", "no", "off", "0")


@dataclass
class EnvSettings:
    """Environment section. None leaves the option to the environment."""

    name: str = DEFAULT_ENV
    n_agents: Optional[int] = None
    sigma_s: Optional[float] = None
    sigma_r: Optional[float] = None
    episode_length: Optional[int] = None
    alpha: Optional[float] = None


@dataclass
class AlgoSettings:
    name: str = DEFAULT_AGENT
    n_samples: int = DEFAULT_N_SAMPLES
    gamma: float = DEFAULT_GAMMA
    tau_lower: float = DEFAULT_TAU_LOWER
    tau_upper: float = DEFAULT_TAU_UPPER
    reward_shift: float = DEFAULT_REWARD_SHIFT
    shift_baselines: bool = False
    epsilon: float = DEFAULT_EPSILON
    exploration_mode: str = DEFAULT_EXPLORATION_MODE
    exploration_sigma: float = DEFAULT_EXPLORATION_SIGMA
    pretrain_steps: int = DEFAULT_PRETRAIN_STEPS
    critic_ratio: int = DEFAULT_CRITIC_RATIO
    target_mix: float = DEFAULT_TARGET_MIX
    batch_size: int = DEFAULT_BATCH_SIZE
    buffer_size: int = DEFAULT_BUFFER_SIZE
    learning_rate: float = DEFAULT_LEARNING_RATE
    layers: tuple = DEFAULT_LAYER_SIZES
    beta: float = DEFAULT_HYSTERETIC_BETA
    forward_model: str = DEFAULT_FORWARD_MODEL
    train_every: int = 1


@dataclass
class RunSettings:
    total_steps: int = DEFAULT_TOTAL_STEPS
    eval_interval: int = DEFAULT_EVAL_INTERVAL
    eval_episodes: int = DEFAULT_EVAL_EPISODES
    seeds: tuple = DEFAULT_SEEDS
    output_dir: str = DEFAULT_OUTPUT_DIR
    workers: int = 1
    checkpoint: bool = True


def _value_type(field_type):
    args = [a for a in get_args(field_type) if a is not type(None)]
    return args[0] if args else field_type


def _parse_bool(value):
    if isinstance(value, bool):
        return value
    if isinstance(value, str) and value.lower() in _TRUE:
        return True
    if isinstance(value, str) and value.lower() in _FALSE:
        return False
    raise ValueError(f"expected a boolean, got '{value}'")


def _parse_int(value):
    if isinstance(value, bool):
        raise ValueError(f"expected an integer, got '{value}'")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        return int(value)
    raise ValueError(f"expected an integer, got '{value}'")


def _parse_float(value):
    if isinstance(value, bool):
        raise ValueError(f"expected a number, got '{value}'")
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        return float(value)
    raise ValueError(f"expected a number, got '{value}'")


def _parse_tuple(value):
    if isinstance(value, str):
        value = [x for x in value.split(",") if x.strip() != ""]
    if isinstance(value, int) and not isinstance(value, bool):
        value = [value]
    return tuple(_parse_int(x.strip() if isinstance(x, str) else x) for x in value)


def _parse_str(value):
    if not isinstance(value, str):
        raise ValueError(f"expected a string, got '{value}'")
    return value


_PARSERS = {
    bool: _parse_bool,
    int: _parse_int,
    float: _parse_float,
    tuple: _parse_tuple,
    str: _parse_str,
}


def _known_keys():
    return {
        f"{section}.{f.name}": f
        for section, section_class in zip(
            SECTIONS, (EnvSettings, AlgoSettings, RunSettings)
        )
        for f in fields(section_class)
    }


def _flatten(values, prefix=""):
    flat = {}
    for key, value in values.items():
        if isinstance(value, dict):
            flat.update(_flatten(value, prefix=f"{prefix}{key}."))
        else:
            flat[f"{prefix}{key}"] = value
    return flat


def _read_key_values(fp):
    """Read the flat key=value format into (key, value, line_number) items."""
    items = []
    with open(fp, encoding="utf-8") as f:
        for line_number, line in enumerate(f, start=1):
            line = line.split("#", 1)[0].strip()
            if line == "":
                continue
            if "=" not in line:
                raise ConfigParseError(
                    f"expected 'key=value', got '{line}'", line_number
                )
            key, value = (x.strip() for x in line.split("=", 1))
            if key == "" or value == "":
                raise ConfigParseError(
                    f"expected 'key=value', got '{line}'", line_number
                )
            items.append((key, value, line_number))
    return items


def _read_toml(fp):
    with open(fp, "rb") as f:
        try:
            values = tomllib.load(f)
        except tomllib.TOMLDecodeError as err:
            raise ConfigParseError(str(err))
    return [(key, value, None) for key, value in _flatten(values).items()]


@dataclass
class ExperimentSettings:
    """Configuration of one experiment: environment, algorithm and runs.

    The settings are written as flat dotted keys, for example
    ``env.name=dg`` or ``algo.M=15``. Every key that is not given keeps its
    default.
    """

    env: EnvSettings = field(default_factory=EnvSettings)
    algo: AlgoSettings = field(default_factory=AlgoSettings)
    run: RunSettings = field(default_factory=RunSettings)

    def __post_init__(self):
        self.validate()

    @classmethod
    def from_dict(cls, values):
        """Create settings from a mapping of dotted keys to values."""
        return cls()._update([(k, v, None) for k, v in values.items()])

    def from_file(self, fp):
        """Fill the contents of settings by reading a config file.

        Arguments
        ---------
        fp: str, Path
            Config file. Files with the suffix .toml are read as TOML,
            every other file as key=value lines.

        Returns
        -------
        ExperimentSettings:
            New settings object, self is left unchanged.
        """
        if Path(fp).suffix == ".toml":
            items = _read_toml(fp)
        else:
            items = _read_key_values(fp)
        return self._update(items)

    def _update(self, items):
        known = _known_keys()
        sections = {s: {} for s in SECTIONS}

        for key, value, line_number in items:
            key = KEY_ALIASES.get(key, key)
            if key not in known:
                raise UnknownKeyError(f"unknown key '{key}'", line_number)

            section, name = key.split(".", 1)
            if name in sections[section]:
                logging.warning(f"Config key '{key}' is set more than once.")

            if value is None and type(None) in get_args(known[key].type):
                sections[section][name] = None
                continue
            parse = _PARSERS[_value_type(known[key].type)]
            try:
                sections[section][name] = parse(value)
            except (TypeError, ValueError) as err:
                raise ConfigParseError(f"invalid value for '{key}': {err}", line_number)

        return ExperimentSettings(
            env=replace(self.env, **sections["env"]),
            algo=replace(self.algo, **sections["algo"]),
            run=replace(self.run, **sections["run"]),
        )

    def to_dict(self):
        """Flat dotted-key representation, JSON serializable."""
        result = {}
        for section in SECTIONS:
            values = getattr(self, section)
            for f in fields(values):
                value = getattr(values, f.name)
                result[f"{section}.{f.name}"] = (
                    list(value) if isinstance(value, tuple) else value
                )
        return result

    def validate(self):
        """Check the ranges of all values.

        Raises
        ------
        InvalidConfigurationError
            If a value is out of range.
        """
        algo, run, env = self.algo, self.run, self.env

        checks = [
            (0.0 < algo.gamma < 1.0, f"algo.gamma should be in (0, 1): {algo.gamma}"),
            (
                0.0 < algo.tau_lower < algo.tau_upper < 1.0,
                "algo.tau_lower and algo.tau_upper should satisfy "
                f"0 < {algo.tau_lower} < {algo.tau_upper} < 1",
            ),
            (algo.n_samples >= 0, f"algo.M should be >= 0: {algo.n_samples}"),
            (
                0.0 <= algo.epsilon <= 1.0,
                f"algo.epsilon should be in [0, 1]: {algo.epsilon}",
            ),
            (
                algo.exploration_sigma >= 0,
                "algo.exploration_sigma should be nonnegative",
            ),
            (algo.pretrain_steps >= 0, "algo.pretrain_steps should be nonnegative"),
            (
                0.0 <= algo.target_mix <= 1.0,
                f"algo.target_mix should be in [0, 1]: {algo.target_mix}",
            ),
            (algo.learning_rate > 0, "algo.learning_rate should be positive"),
            (0.0 < algo.beta <= 1.0, f"algo.beta should be in (0, 1]: {algo.beta}"),
            (
                len(algo.layers) > 0 and min(algo.layers) > 0,
                "algo.layers should be a nonempty list of positive sizes",
            ),
            (len(run.seeds) > 0, "run.seeds should not be empty"),
            (
                len(set(run.seeds)) == len(run.seeds),
                f"run.seeds should be distinct: {list(run.seeds)}",
            ),
            (
                env.n_agents is None or env.n_agents >= 1,
                "env.n_agents should be positive",
            ),
            (
                env.episode_length is None or env.episode_length >= 1,
                "env.episode_length should be positive",
            ),
            (
                (env.sigma_s or 0.0) >= 0 and (env.sigma_r or 0.0) >= 0,
                "env.sigma_s and env.sigma_r should be nonnegative",
            ),
        ]
        for key in [
            "algo.critic_ratio",
            "algo.batch_size",
            "algo.buffer_size",
            "algo.train_every",
            "run.total_steps",
            "run.eval_interval",
            "run.eval_episodes",
            "run.workers",
        ]:
            section, name = key.split(".")
            value = getattr(getattr(self, section), name)
            checks.append((value > 0, f"{key} should be positive: {value}"))

        for ok, message in checks:
            if not ok:
                raise InvalidConfigurationError(message)

    def agent_kwargs(self):
        """Keyword arguments for get_agent.

        Baselines learn from raw rewards unless algo.shift_baselines is set.
        """
        kwargs = {
            "layer_sizes": self.algo.layers,
            "learning_rate": self.algo.learning_rate,
            "gamma": self.algo.gamma,
            "epsilon": self.algo.epsilon,
            "exploration_mode": self.algo.exploration_mode,
            "exploration_sigma": self.algo.exploration_sigma,
            "batch_size": self.algo.batch_size,
            "buffer_size": self.algo.buffer_size,
            "pretrain_steps": self.algo.pretrain_steps,
            "critic_ratio": self.algo.critic_ratio,
            "target_mix": self.algo.target_mix,
            "train_every": self.algo.train_every,
            "n_samples": self.algo.n_samples,
            "tau_lower": self.algo.tau_lower,
            "tau_upper": self.algo.tau_upper,
            "forward_model": self.algo.forward_model,
            "beta": self.algo.beta,
        }
        if self.algo.name == "mmq" or self.algo.shift_baselines:
            kwargs["reward_shift"] = self.algo.reward_shift
        else:
            kwargs["reward_shift"] = 0.0
        return kwargs

    def env_kwargs(self, noise=True):
        """Keyword arguments for get_env, without noise when noise is False."""
        return {
            "n_agents": self.env.n_agents,
            "episode_length": self.env.episode_length,
            "alpha": self.env.alpha,
            "sigma_s": self.env.sigma_s if noise else None,
            "sigma_r": self.env.sigma_r if noise else None,
        }


def load_config(fp):
    """Load experiment settings from a config file.

    Arguments
    ---------
    fp: str, Path
        Path to a key=value or TOML config file.

    Returns
    -------
    ExperimentSettings:
        Settings with every missing key defaulted.
    """
    settings = ExperimentSettings().from_file(fp)
    logging.debug(f"Loaded settings from {fp}: {settings.to_dict()}")
    return settings
