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

"""Theory entry point."""

import argparse

from rich.console import Console
from rich.table import Table

from maxmax.config import EXIT_SUCCESS
from maxmax.config import EXIT_THEORY_FAILURE
from maxmax.simulation.cli import _set_log_verbosity
from maxmax.theory.checks import run_theory_suite


def _format_detail(detail):
    parts = []
    for key, value in detail.items():
        if isinstance(value, float):
            parts.append(f"{key}={value:.6g}")
        else:
            parts.append(f"{key}={value}")
    return " ".join(parts)


def cli_theory(argv):
    parser = _theory_parser()
    args = parser.parse_args(argv)

    _set_log_verbosity(args.verbose)

    outcomes = run_theory_suite(seed=args.seed, quick=args.quick)

    console = Console()
    table = Table(title="Theory checks")
    table.add_column("check")
    table.add_column("result")
    table.add_column("numbers")
    for outcome in outcomes:
        result = "[green]pass[/green]" if outcome.passed else "[red]FAIL[/red]"
        table.add_row(outcome.name, result, _format_detail(outcome.detail))
    console.print(table)

    # machine readable rows
    for outcome in outcomes:
        status = "pass" if outcome.passed else "fail"
        print(f"{outcome.name}\t{status}\t{_format_detail(outcome.detail)}")

    if all(outcome.passed for outcome in outcomes):
        return EXIT_SUCCESS
    return EXIT_THEORY_FAILURE


DESCRIPTION_THEORY = """
Numerical checks of the theory behind MaxMax Q-learning.

Runs Monte-Carlo checks of the nearest-sample distance bound, contraction of
the set operator, alignment of individual and joint optima and the
degradation of values under perturbed next states."""


def _theory_parser():
    parser = argparse.ArgumentParser(
        prog="theory",
        description=DESCRIPTION_THEORY,
        formatter_class=argparse.RawTextHelpFormatter,
    )
    parser.add_argument(
        "--seed",
        default=0,
        type=int,
        help="Seed of all random draws. Default 0.",
    )
    parser.add_argument(
        "--quick",
        action="store_true",
        help="Run fewer Monte-Carlo trials and MDPs.",
    )
    parser.add_argument(
        "--verbose",
        "-v",
        default=0,
        type=int,
        help="Verbosity",
    )
    return parser
