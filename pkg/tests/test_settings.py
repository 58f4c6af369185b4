from pathlib import Path

import pytest
from pytest import mark

from maxmax.config import DEFAULT_N_SAMPLES
from maxmax.config import DEFAULT_SEEDS
from maxmax.exceptions import ConfigParseError
from maxmax.exceptions import InvalidConfigurationError
from maxmax.exceptions import UnknownKeyError
from maxmax.settings import ExperimentSettings
from maxmax.settings import load_config


def _write(tmpdir, text, name="experiment.cfg"):
    fp = Path(tmpdir, name)
    fp.write_text(text, encoding="utf-8")
    return fp


def test_empty_file_gives_defaults(tmpdir):
    settings = load_config(_write(tmpdir, ""))
    assert settings == ExperimentSettings()
    assert settings.algo.n_samples == DEFAULT_N_SAMPLES
    assert settings.run.seeds == DEFAULT_SEEDS
    assert settings.env.name == "dg"


def test_key_values(tmpdir):
    text = """
# differential game with a short budget
env.name = cn
env.sigma_s=0.1
algo.name=iddpg   # inline comment
algo.layers=64,64
algo.shift_baselines=yes
run.seeds=3,1,2
run.checkpoint=off
"""
    settings = load_config(_write(tmpdir, text))
    assert settings.env.name == "cn"
    assert settings.env.sigma_s == 0.1
    assert settings.algo.name == "iddpg"
    assert settings.algo.layers == (64, 64)
    assert settings.algo.shift_baselines is True
    assert settings.run.seeds == (3, 1, 2)
    assert settings.run.checkpoint is False


def test_aliases(tmpdir):
    settings = load_config(_write(tmpdir, "algo.M=0\nalgo.c=5\nalgo.layer_sizes=8"))
    assert settings.algo.n_samples == 0
    assert settings.algo.reward_shift == 5.0
    assert settings.algo.layers == (8,)


def test_toml(tmpdir):
    text = """
[env]
name = "pp"
n_agents = 3

[algo]
M = 4
layers = [32, 32]

[run]
seeds = [0, 1]
"""
    settings = load_config(_write(tmpdir, text, "experiment.toml"))
    assert settings.env.name == "pp"
    assert settings.env.n_agents == 3
    assert settings.algo.n_samples == 4
    assert settings.algo.layers == (32, 32)
    assert settings.run.seeds == (0, 1)


def test_toml_parse_error(tmpdir):
    with pytest.raises(ConfigParseError):
        load_config(_write(tmpdir, "[env\nname=", "experiment.toml"))


@mark.parametrize(
    "text,line_number",
    [
        ("env.name=dg\nalgo.gamma\n", 2),
        ("env.name=dg\n\n=0.5\n", 3),
        ("algo.M=\n", 1),
        ("algo.M=many\n", 1),
        ("run.checkpoint=maybe\n", 1),
    ],
)
def test_parse_error_line_number(tmpdir, text, line_number):
    with pytest.raises(ConfigParseError) as err:
        load_config(_write(tmpdir, text))
    assert err.value.line_number == line_number
    assert f"line {line_number}" in str(err.value)


def test_unknown_key(tmpdir):
    with pytest.raises(UnknownKeyError) as err:
        load_config(_write(tmpdir, "env.name=dg\n# comment\nalgo.alpha=0.1\n"))
    assert err.value.line_number == 3


def test_duplicate_key_warns(tmpdir, caplog):
    settings = load_config(_write(tmpdir, "algo.gamma=0.9\nalgo.gamma=0.95\n"))
    assert settings.algo.gamma == 0.95
    assert "more than once" in caplog.text


@mark.parametrize(
    "values",
    [
        {"algo.gamma": 1.5},
        {"algo.gamma": 0.0},
        {"algo.tau_lower": 0.9, "algo.tau_upper": 0.1},
        {"algo.n_samples": -1},
        {"algo.epsilon": 2.0},
        {"algo.beta": 0.0},
        {"algo.critic_ratio": 0},
        {"algo.layers": ()},
        {"run.seeds": (1, 1)},
        {"run.seeds": ()},
        {"run.eval_interval": 0},
        {"env.n_agents": 0},
        {"env.sigma_r": -0.1},
    ],
)
def test_invalid_values(values):
    with pytest.raises(InvalidConfigurationError):
        ExperimentSettings.from_dict(values)


def test_zero_samples_valid():
    settings = ExperimentSettings.from_dict({"algo.M": 0})
    assert settings.algo.n_samples == 0


def test_from_file_leaves_original(tmpdir):
    original = ExperimentSettings()
    updated = original.from_file(_write(tmpdir, "algo.gamma=0.5"))
    assert updated.algo.gamma == 0.5
    assert original.algo.gamma != 0.5


def test_to_dict_round_trip():
    settings = ExperimentSettings.from_dict({"algo.layers": "16,16", "run.seeds": "4"})
    values = settings.to_dict()
    assert values["algo.layers"] == [16, 16]
    assert values["run.seeds"] == [4]
    assert ExperimentSettings.from_dict(values) == settings


@mark.parametrize(
    "name,shift_baselines,expected",
    [
        ("mmq", False, 2.0),
        ("iddpg", False, 0.0),
        ("hyddpg", False, 0.0),
        ("hyddpg", True, 2.0),
    ],
)
def test_agent_kwargs_reward_shift(name, shift_baselines, expected):
    settings = ExperimentSettings.from_dict(
        {"algo.name": name, "algo.shift_baselines": shift_baselines}
    )
    kwargs = settings.agent_kwargs()
    assert kwargs["reward_shift"] == expected
    assert kwargs["layer_sizes"] == settings.algo.layers


def test_env_kwargs_without_noise():
    settings = ExperimentSettings.from_dict(
        {"env.sigma_s": 0.1, "env.sigma_r": 0.2, "env.n_agents": 3}
    )
    assert settings.env_kwargs()["sigma_s"] == 0.1
    quiet = settings.env_kwargs(noise=False)
    assert quiet["sigma_s"] is None
    assert quiet["sigma_r"] is None
    assert quiet["n_agents"] == 3
