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

"""Command Line Interface (CLI) for MaxMax experiments."""

import argparse
import inspect
import logging
import sys
from itertools import groupby

from maxmax import __version__
from maxmax.config import EXIT_FAILURE
from maxmax.config import EXIT_SUCCESS
from maxmax.config import EXIT_USAGE
from maxmax.utils import _entry_points

DESCRIPTION = "MaxMax Q-learning lab for decentralized multi-agent learning."


def _execute_entry_point(entry, args):
    if inspect.isclass(entry):
        return entry().execute(args)
    return entry(args)


def _usage(base_entries):
    description_subcommands = ""
    for name, dist_entry_points in groupby(
        base_entries, lambda e: e.dist.name if e.dist else "maxmax"
    ):
        description_subcommands += f"\n[{name} {__version__}]\n"
        for entry in dist_entry_points:
            description_subcommands += f"\t{entry.name}\n"

    parser = argparse.ArgumentParser(
        prog="maxmax",
        formatter_class=argparse.RawTextHelpFormatter,
        description=DESCRIPTION,
    )
    parser.add_argument(
        "subcommand",
        nargs="?",
        default=None,
        help=f"The subcommand to launch. Available commands:\n\n"
        f"{description_subcommands}",
    )
    parser.add_argument(
        "-V",
        "--version",
        action="version",
        version=f"%(prog)s {__version__}",
    )
    return parser


def main(argv=None):
    """Dispatch a subcommand and return its exit code.

    No subcommand or an unknown one prints the usage and returns 64.
    """
    argv = sys.argv[1:] if argv is None else list(argv)
    base_entries = _entry_points(group="maxmax.entry_points")
    parser = _usage(base_entries)

    if len(argv) > 0 and argv[0] in ("-V", "--version", "-h", "--help"):
        try:
            parser.parse_args(argv[:1])
        except SystemExit as err:
            return EXIT_SUCCESS if err.code in (0, None) else EXIT_USAGE

    if len(argv) == 0 or argv[0] not in base_entries.names:
        if len(argv) > 0:
            print(f"'{argv[0]}' is not a valid subcommand.\n", file=sys.stderr)
        parser.print_help()
        return EXIT_USAGE

    entry = base_entries[argv[0]].load()
    try:
        code = _execute_entry_point(entry, argv[1:])
    except SystemExit as err:
        # argparse errors of the subcommand
        return EXIT_SUCCESS if err.code in (0, None) else EXIT_USAGE
    except Exception as err:
        logging.error(f"{type(err).__name__}: {err}")
        return EXIT_FAILURE

    return EXIT_SUCCESS if code is None else int(code)


if __name__ == "__main__":
    sys.exit(main())
