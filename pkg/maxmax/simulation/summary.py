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

__all__ = ["RunRecord", "SummaryRow", "SummaryTable", "final_return", "summarize"]

import logging
from dataclasses import dataclass
from dataclasses import field
from typing import Optional

import numpy as np
import pandas as pd
from scipy.stats import t as student_t

from maxmax.config import SUMMARY_WINDOW
from maxmax.exceptions import InvalidArgumentError

CONFIDENCE = 0.95
SUMMARY_COLUMNS = ["env", "algorithm", "n_seeds", "mean", "ci95"]


@dataclass
class RunRecord:
    """Learning curve and diagnostics of one seed."""

    env: str
    algorithm: str
    seed: int
    env_steps: list = field(default_factory=list)
    returns: list = field(default_factory=list)
    diagnostics: list = field(default_factory=list)
    status: str = "running"
    error: Optional[str] = None

    def add_point(self, env_step, mean_return):
        if self.env_steps and env_step <= self.env_steps[-1]:
            raise InvalidArgumentError(
                f"Evaluation steps should increase: {env_step} after "
                f"{self.env_steps[-1]}"
            )
        if not np.isfinite(mean_return):
            raise InvalidArgumentError(f"Non-finite return at step {env_step}")
        self.env_steps.append(int(env_step))
        self.returns.append(float(mean_return))

    @property
    def n_eval_points(self):
        return len(self.env_steps)

    def to_frame(self):
        return pd.DataFrame(
            {
                "seed": self.seed,
                "env_step": self.env_steps,
                "mean_return": self.returns,
            },
            columns=["seed", "env_step", "mean_return"],
        )


def final_return(returns, window=SUMMARY_WINDOW):
    """Mean of the last window evaluation points."""
    if len(returns) == 0:
        raise InvalidArgumentError("No evaluation points to summarize")
    return float(np.mean(returns[-window:]))


@dataclass
class SummaryRow:
    env: str
    algorithm: str
    n_seeds: int
    mean: float
    ci95: float


@dataclass
class SummaryTable:
    """Mean final return and 95% confidence half-width per environment and
    algorithm."""

    rows: list = field(default_factory=list)

    def to_frame(self):
        return pd.DataFrame(
            [
                [r.env, r.algorithm, r.n_seeds, r.mean, r.ci95]
                for r in self.rows
            ],
            columns=SUMMARY_COLUMNS,
        )

    def to_csv(self, fp):
        self.to_frame().to_csv(fp, index=False, lineterminator="\n")

    def to_text(self):
        lines = [
            f"{'env':<20}{'algorithm':<12}{'seeds':>6}{'mean':>12}{'ci95':>10}"
        ]
        for r in self.rows:
            lines.append(
                f"{r.env:<20}{r.algorithm:<12}{r.n_seeds:>6}"
                f"{r.mean:>12.2f}{r.ci95:>10.2f}"
            )
        return "\n".join(lines) + "\n"


def _confidence_half_width(values):
    n = len(values)
    sd = float(np.std(values, ddof=1))
    return float(student_t.ppf(0.5 + CONFIDENCE / 2, n - 1) * sd / np.sqrt(n))


def summarize(records, window=SUMMARY_WINDOW):
    """Summarize the final returns of runs over seeds.

    The final return of a seed is the mean of its last window evaluation
    points. The confidence half-width uses the Student-t quantile with
    n - 1 degrees of freedom.

    Arguments
    ---------
    records: list of RunRecord
        Runs of one or more environment and algorithm pairs.
    window: int
        Number of final evaluation points per seed.

    Returns
    -------
    SummaryTable:
        One row per environment and algorithm.
    """
    groups = {}
    for record in records:
        if record.status == "failed" or record.n_eval_points == 0:
            logging.warning(
                f"Skipping seed {record.seed} of {record.env}/{record.algorithm}: "
                f"{record.error or 'no evaluation points'}"
            )
            continue
        groups.setdefault((record.env, record.algorithm), []).append(
            final_return(record.returns, window)
        )

    if not groups:
        raise InvalidArgumentError("Summaries need at least 2 seeds, got none")

    table = SummaryTable()
    for (env, algorithm), values in sorted(groups.items()):
        if len(values) < 2:
            raise InvalidArgumentError(
                f"Summaries need at least 2 seeds, {env}/{algorithm} has "
                f"{len(values)}"
            )
        table.rows.append(
            SummaryRow(
                env=env,
                algorithm=algorithm,
                n_seeds=len(values),
                mean=float(np.mean(values)),
                ci95=_confidence_half_width(values),
            )
        )
    return table
