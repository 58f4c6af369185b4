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

__all__ = ["Simulate", "run_experiment", "run_seed"]

import logging
from pathlib import Path

import numpy as np
import pandas as pd
from joblib import Parallel
from joblib import delayed
from tqdm import tqdm

from maxmax.envs.utils import get_env
from maxmax.exceptions import NumericFailureError
from maxmax.models.agents.utils import get_agent
from maxmax.models.replay import Transition
from maxmax.simulation.checkpoint import save_agent_checkpoint
from maxmax.simulation.evaluate import evaluate_agents
from maxmax.simulation.experiment import ExperimentFile
from maxmax.simulation.summary import RunRecord
from maxmax.utils import check_finite
from maxmax.utils import derive_seeds
from maxmax.utils import get_n_workers

RESULT_COLUMNS = ["seed", "env_step", "mean_return"]
DIAGNOSTIC_COLUMNS = [
    "seed",
    "env_step",
    "critic_loss",
    "actor_loss",
    "quantile_loss",
    "reward_loss",
    "coverage",
    "bound_width",
]


def run_name(env, algorithm, seed):
    return f"{env}_{algorithm}_seed{seed}"


def _append_rows(fp, rows, columns):
    df = pd.DataFrame(rows, columns=columns)
    df.to_csv(
        fp,
        mode="a",
        header=not Path(fp).exists(),
        index=False,
        encoding="utf-8",
        lineterminator="\n",
    )


class Simulate:
    """Train independent agents on one environment for one seed.

    Every agent observes the global state, acts on its own part of the joint
    action and learns from its own replay buffer. One joint environment step
    counts as one step for every agent.

    Arguments
    ---------
    settings: ExperimentSettings
        Settings of the experiment.
    seed: int
        Seed of this run. Environments and agents get their own seeds
        derived from it.
    output_dir: str, Path
        Folder for the result files. Defaults to settings.run.output_dir.
    progress: bool
        Show a progress bar.
    """

    def __init__(self, settings, seed, output_dir=None, progress=True):
        self.settings = settings
        self.seed = int(seed)
        self.output_dir = Path(
            settings.run.output_dir if output_dir is None else output_dir
        )
        self.progress = progress

        env_seed, eval_seed, agents_seed = derive_seeds(self.seed, 3)
        self.env = get_env(
            settings.env.name, random_state=env_seed, **settings.env_kwargs()
        )
        self.eval_env = get_env(
            settings.env.name,
            random_state=eval_seed,
            **settings.env_kwargs(noise=False),
        )

        low, high = self.env.state_bounds()
        self.agents = [
            get_agent(
                settings.algo.name,
                self.env.state_dim,
                self.env.action_dim,
                state_low=low,
                state_high=high,
                random_state=agent_seed,
                **settings.agent_kwargs(),
            )
            for agent_seed in derive_seeds(agents_seed, self.env.n_agents)
        ]

        self.record = RunRecord(
            env=settings.env.name, algorithm=settings.algo.name, seed=self.seed
        )
        self._last_diagnostics = [{} for _ in self.agents]
        logging.debug(f"{self.name} agent parameters: {self.agents[0].param}")

    @property
    def name(self):
        return run_name(self.settings.env.name, self.settings.algo.name, self.seed)

    @property
    def results_path(self):
        return Path(self.output_dir, f"{self.name}.csv")

    @property
    def diagnostics_path(self):
        return Path(self.output_dir, f"{self.name}_diagnostics.csv")

    def checkpoint_stem(self, agent_index):
        return Path(self.output_dir, "checkpoints", f"{self.name}_agent{agent_index}")

    def run(self):
        """Train for run.total_steps joint steps.

        Returns
        -------
        RunRecord:
            Learning curve of the run. A numeric failure stops the run and
            marks the record as failed.
        """
        self.output_dir.mkdir(parents=True, exist_ok=True)
        for fp in (self.results_path, self.diagnostics_path):
            fp.unlink(missing_ok=True)

        try:
            self._train()
        except NumericFailureError as err:
            logging.error(f"Run {self.name} failed: {err}")
            self.record.status = "failed"
            self.record.error = str(err)
            return self.record

        if self.settings.run.checkpoint:
            for i, agent in enumerate(self.agents):
                save_agent_checkpoint(agent, self.checkpoint_stem(i))

        self.record.status = "finished"
        return self.record

    def _train(self):
        run = self.settings.run
        state = self.env.reset()

        for t in tqdm(
            range(1, run.total_steps + 1),
            desc=f"Seed {self.seed}",
            disable=not self.progress,
            leave=False,
        ):
            joint_action = np.stack([agent.act(state) for agent in self.agents])
            result = self.env.step(joint_action)

            for i, agent in enumerate(self.agents):
                diagnostics = agent.train_step(
                    Transition(state, joint_action[i], result.reward, result.next_state)
                )
                if diagnostics:
                    self._last_diagnostics[i] = diagnostics

            state = self.env.reset() if result.done else result.next_state

            if t % run.eval_interval == 0 or t == run.total_steps:
                self.evaluate(t)

    def _diagnostics_row(self, env_step, evaluation):
        row = {"seed": self.seed, "env_step": env_step}
        for key in DIAGNOSTIC_COLUMNS[2:6]:
            values = [d[key] for d in self._last_diagnostics if key in d]
            row[key] = float(np.mean(values)) if values else np.nan

        coverage = []
        width = []
        for i, agent in enumerate(self.agents):
            if hasattr(agent, "coverage_statistic"):
                batch = evaluation.agent_batch(i)
                coverage.append(agent.coverage_statistic(batch))
                width.append(agent.bound_width(batch))
        row["coverage"] = float(np.mean(coverage)) if coverage else np.nan
        row["bound_width"] = float(np.mean(width)) if width else np.nan
        return row

    def evaluate(self, env_step):
        """Evaluate the greedy policies and append the result files."""
        evaluation = evaluate_agents(
            self.agents, self.eval_env, self.settings.run.eval_episodes
        )
        check_finite(evaluation.returns, "evaluation return")
        self.record.add_point(env_step, evaluation.mean_return)

        diagnostics = self._diagnostics_row(env_step, evaluation)
        self.record.diagnostics.append(diagnostics)

        _append_rows(
            self.results_path,
            [[self.seed, env_step, evaluation.mean_return]],
            RESULT_COLUMNS,
        )
        _append_rows(self.diagnostics_path, [diagnostics], DIAGNOSTIC_COLUMNS)

        logging.info(
            f"{self.name} step {env_step}: return {evaluation.mean_return:.3f}, "
            f"coverage {diagnostics['coverage']:.1f}%"
        )
        return evaluation


def run_seed(settings, seed, output_dir=None, progress=True):
    """Run one seed and record its status in the experiment file."""
    output_dir = Path(settings.run.output_dir if output_dir is None else output_dir)
    experiment = ExperimentFile(output_dir)

    record = Simulate(settings, seed, output_dir=output_dir, progress=progress).run()
    experiment.update_run(
        record.seed,
        status=record.status,
        n_eval_points=record.n_eval_points,
        error=record.error,
    )
    return record


def run_experiment(settings, output_dir=None, progress=True):
    """Run every seed of an experiment.

    Seeds run in parallel worker processes. The number of workers is
    settings.run.workers, overridden by the MMQ_WORKERS environment
    variable.

    Arguments
    ---------
    settings: ExperimentSettings
        Settings of the experiment.
    output_dir: str, Path
        Output folder, defaults to settings.run.output_dir.
    progress: bool
        Show progress bars.

    Returns
    -------
    list of RunRecord:
        One record per seed, in the order of settings.run.seeds.
    """
    output_dir = Path(settings.run.output_dir if output_dir is None else output_dir)
    ExperimentFile.create(output_dir, settings)

    n_workers = get_n_workers(settings.run.workers)
    logging.info(
        f"Running {len(settings.run.seeds)} seeds of {settings.algo.name} on "
        f"{settings.env.name} with {n_workers} workers."
    )

    if n_workers == 1:
        return [
            run_seed(settings, seed, output_dir=output_dir, progress=progress)
            for seed in settings.run.seeds
        ]

    return Parallel(n_jobs=n_workers)(
        delayed(run_seed)(settings, seed, output_dir=output_dir, progress=False)
        for seed in settings.run.seeds
    )
