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
"""Training, evaluation, matrix-game and summary entry points."""

import argparse
import logging
import re
from dataclasses import replace
from pathlib import Path

import pandas as pd
from rich.console import Console
from rich.table import Table

from maxmax.config import EXIT_FAILURE
from maxmax.config import EXIT_SUCCESS
from maxmax.config import MATRIX_ACTIONS
from maxmax.config import SUMMARY_WINDOW
from maxmax.envs.matrix import matrix_threshold_sweep
from maxmax.envs.utils import get_env
from maxmax.exceptions import InvalidArgumentError
from maxmax.models.agents.utils import get_agent
from maxmax.models.tabular import tabular_matrix_learn
from maxmax.settings import load_config
from maxmax.simulation.checkpoint import load_agent_checkpoint
from maxmax.simulation.evaluate import rollout_episode
from maxmax.simulation.simulate import run_experiment
from maxmax.simulation.summary import RunRecord
from maxmax.simulation.summary import summarize
from maxmax.types import type_positive_int
from maxmax.types import type_probability

RESULT_FILE_PATTERN = re.compile(
    r"^(?P<env>.+)_(?P<algo>[^_]+)_seed(?P<seed>\d+)\.csv$"
)
CHECKPOINT_AGENT_SUFFIX = re.compile(r"_agent\d+$")


def _set_log_verbosity(verbose):
    if verbose == 0:
        logging.getLogger().setLevel(logging.WARNING)
    elif verbose == 1:
        logging.getLogger().setLevel(logging.INFO)
    elif verbose >= 2:
        logging.getLogger().setLevel(logging.DEBUG)


def _write_summary(table, output_dir):
    Path(output_dir, "summary.txt").write_text(table.to_text(), encoding="utf-8")
    table.to_csv(Path(output_dir, "summary.csv"))


def _print_summary(table):
    print(table.to_text())

    # machine readable rows
    for r in table.rows:
        print(f"{r.env}\t{r.algorithm}\t{r.n_seeds}\t{r.mean:.6g}\t{r.ci95:.6g}")


def cli_train(argv):
    parser = _train_parser()
    args = parser.parse_args(argv)

    _set_log_verbosity(args.verbose)

    settings = load_config(args.config)
    if args.output_dir is not None:
        settings = replace(
            settings, run=replace(settings.run, output_dir=args.output_dir)
        )
    if args.workers is not None:
        settings = replace(settings, run=replace(settings.run, workers=args.workers))

    print(
        f"Training {settings.algo.name} on {settings.env.name} for "
        f"{settings.run.total_steps} steps, seeds {list(settings.run.seeds)}\n"
    )
    records = run_experiment(settings, progress=not args.no_progress)

    failed = [r for r in records if r.status == "failed"]
    for record in failed:
        print(f"Seed {record.seed} failed: {record.error}")

    if len(records) - len(failed) >= 2:
        table = summarize(records)
        _write_summary(table, settings.run.output_dir)
        _print_summary(table)

    return EXIT_FAILURE if failed else EXIT_SUCCESS


def _checkpoint_stem(path):
    path = Path(path)
    for suffix in (".bin", ".manifest"):
        if path.name.endswith(suffix):
            path = path.with_name(path.name[: -len(suffix)])
    return path.with_name(CHECKPOINT_AGENT_SUFFIX.sub("", path.name))


def cli_eval(argv):
    parser = _eval_parser()
    args = parser.parse_args(argv)

    _set_log_verbosity(args.verbose)

    settings = load_config(args.config)
    env = get_env(
        settings.env.name, random_state=args.seed, **settings.env_kwargs(noise=False)
    )
    low, high = env.state_bounds()

    stem = _checkpoint_stem(args.checkpoint)
    agents = []
    for i in range(env.n_agents):
        agent = get_agent(
            settings.algo.name,
            env.state_dim,
            env.action_dim,
            state_low=low,
            state_high=high,
            random_state=args.seed,
            **settings.agent_kwargs(),
        )
        agents.append(
            load_agent_checkpoint(agent, stem.with_name(f"{stem.name}_agent{i}"))
        )

    n_episodes = settings.run.eval_episodes if args.episodes is None else args.episodes
    has_location = hasattr(env, "location")

    table = Table(title=f"Greedy episodes of {stem.name}")
    table.add_column("episode", justify="right")
    table.add_column("return", justify="right")
    if has_location:
        table.add_column("final l", justify="right")

    returns = []
    for k in range(n_episodes):
        episode_return, _ = rollout_episode(agents, env, greedy=True)
        returns.append(episode_return)
        row = [str(k), f"{episode_return:.4f}"]
        if has_location:
            row.append(f"{env.location():.4f}")
        table.add_row(*row)

    Console().print(table)
    print(f"mean_return\t{sum(returns) / len(returns):.6g}")
    return EXIT_SUCCESS


def cli_matrix(argv):
    parser = _matrix_parser()
    args = parser.parse_args(argv)

    _set_log_verbosity(args.verbose)

    console = Console()

    sweep = matrix_threshold_sweep()
    table = Table(title="Expected values against the partner's probability of A")
    for column in ["pi_A", "Q_A", "Q_B", "Q_C", "greedy"]:
        table.add_column(column, justify="right")
    for _, row in sweep.iterrows():
        table.add_row(*[str(row[c]) for c in ["pi_A", "Q_A", "Q_B", "Q_C", "greedy"]])
    console.print(table)

    crossover = sweep[sweep["Q_A"] == sweep["Q_B"]]
    for _, row in crossover.iterrows():
        print(f"crossover\tpi_A={row['pi_A']}\tQ_A={row['Q_A']}\tQ_B={row['Q_B']}")

    table = Table(title=f"Tabular learners, {args.episodes} episodes")
    table.add_column("rule")
    table.add_column("seed", justify="right")
    table.add_column("greedy joint action")
    table.add_column("return", justify="right")
    for rule in ["average", "optimistic-max"]:
        n_suboptimal = 0
        n_optimal = 0
        for seed in range(args.n_seeds):
            result = tabular_matrix_learn(
                rule, args.episodes, args.exploration, rng=seed
            )
            joint = result.greedy_joint
            n_optimal += joint == (MATRIX_ACTIONS[0], MATRIX_ACTIONS[0])
            n_suboptimal += MATRIX_ACTIONS[0] not in joint
            table.add_row(
                rule, str(seed), ",".join(joint), f"{result.greedy_return:g}"
            )
        print(
            f"{rule}\toptimal={n_optimal}/{args.n_seeds}\t"
            f"suboptimal={n_suboptimal}/{args.n_seeds}"
        )
    console.print(table)
    return EXIT_SUCCESS


def read_run_records(output_dir):
    """Read the per-seed result files of an output directory."""
    records = []
    for fp in sorted(Path(output_dir).glob("*.csv")):
        match = RESULT_FILE_PATTERN.match(fp.name)
        if match is None:
            continue
        df = pd.read_csv(fp)
        record = RunRecord(
            env=match["env"],
            algorithm=match["algo"],
            seed=int(match["seed"]),
            status="finished",
        )
        for env_step, mean_return in zip(df["env_step"], df["mean_return"]):
            record.add_point(env_step, mean_return)
        records.append(record)
    return records


def cli_summarize(argv):
    parser = _summarize_parser()
    args = parser.parse_args(argv)

    _set_log_verbosity(args.verbose)

    records = read_run_records(args.output_dir)
    if not records:
        raise InvalidArgumentError(f"No result files found in {args.output_dir}")

    table = summarize(records, window=args.window)
    _write_summary(table, args.output_dir)
    _print_summary(table)
    return EXIT_SUCCESS


DESCRIPTION_TRAIN = """
Train independent learners on a cooperative multi-agent environment.

Every seed writes <output_dir>/<env>_<algo>_seed<k>.csv with the mean greedy
return at each evaluation point. The number of parallel workers can be set
with the MMQ_WORKERS environment variable."""


def _train_parser():
    parser = argparse.ArgumentParser(
        prog="train",
        description=DESCRIPTION_TRAIN,
        formatter_class=argparse.RawTextHelpFormatter,
    )
    parser.add_argument("config", type=str, help="Config file (key=value or .toml).")
    parser.add_argument(
        "--output-dir",
        "-o",
        default=None,
        type=str,
        help="Output folder, overrides run.output_dir.",
    )
    parser.add_argument(
        "--workers",
        default=None,
        type=type_positive_int,
        help="Number of parallel seeds, overrides run.workers.",
    )
    parser.add_argument(
        "--no-progress",
        action="store_true",
        help="Hide the progress bars.",
    )
    parser.add_argument("--verbose", "-v", default=0, type=int, help="Verbosity")
    return parser


def _eval_parser():
    parser = argparse.ArgumentParser(
        prog="eval",
        description="Replay greedy episodes of trained agents.",
        formatter_class=argparse.RawTextHelpFormatter,
    )
    parser.add_argument(
        "checkpoint",
        type=str,
        help="Checkpoint path without the _agent<i> suffix, for example\n"
        "output/checkpoints/dg_mmq_seed0",
    )
    parser.add_argument("config", type=str, help="Config file used for training.")
    parser.add_argument(
        "--episodes",
        default=None,
        type=type_positive_int,
        help="Number of episodes. Default run.eval_episodes.",
    )
    parser.add_argument(
        "--seed", default=0, type=int, help="Seed of the environment. Default 0."
    )
    parser.add_argument("--verbose", "-v", default=0, type=int, help="Verbosity")
    return parser


def _matrix_parser():
    parser = argparse.ArgumentParser(
        prog="matrix",
        description="Expected values and tabular learners on the climbing game.",
        formatter_class=argparse.RawTextHelpFormatter,
    )
    parser.add_argument(
        "--episodes",
        default=1000,
        type=type_positive_int,
        help="Games per learning run. Default 1000.",
    )
    parser.add_argument(
        "--exploration",
        default=1.0,
        type=type_probability,
        help="Probability of a uniformly random action. Default 1.0.",
    )
    parser.add_argument(
        "--n-seeds",
        default=8,
        type=type_positive_int,
        help="Number of learning runs per rule. Default 8.",
    )
    parser.add_argument("--verbose", "-v", default=0, type=int, help="Verbosity")
    return parser


def _summarize_parser():
    parser = argparse.ArgumentParser(
        prog="summarize",
        description="Mean final return and 95% confidence interval over seeds.",
        formatter_class=argparse.RawTextHelpFormatter,
    )
    parser.add_argument("output_dir", type=str, help="Folder with result files.")
    parser.add_argument(
        "--window",
        default=SUMMARY_WINDOW,
        type=type_positive_int,
        help=f"Final evaluation points per seed. Default {SUMMARY_WINDOW}.",
    )
    parser.add_argument("--verbose", "-v", default=0, type=int, help="Verbosity")
    return parser
