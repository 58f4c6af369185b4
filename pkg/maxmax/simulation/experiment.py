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

"""Run metadata file of an output directory."""

__all__ = ["ExperimentFile"]

import json
import logging
from datetime import datetime
from pathlib import Path

import jsonschema
from filelock import FileLock

from maxmax import __version__
from maxmax.config import SCHEMA

PATH_EXPERIMENT_CONFIG = "experiment.json"
PATH_EXPERIMENT_CONFIG_LOCK = "experiment.json.lock"
LOCK_TIMEOUT = 60


class ExperimentFile:
    """Settings and per-seed status of the experiment in an output folder.

    Seed workers update their own entry. Every read-modify-write happens
    under a file lock.

    Arguments
    ---------
    output_dir: str, Path
        Output directory of the experiment.
    """

    def __init__(self, output_dir):
        self.output_dir = Path(output_dir)

    @property
    def path(self):
        return Path(self.output_dir, PATH_EXPERIMENT_CONFIG)

    def _lock(self):
        return FileLock(
            Path(self.output_dir, PATH_EXPERIMENT_CONFIG_LOCK), timeout=LOCK_TIMEOUT
        )

    @classmethod
    def create(cls, output_dir, settings):
        """Create or overwrite the metadata file for new settings.

        Arguments
        ---------
        output_dir: str, Path
            Output directory, created when missing.
        settings: ExperimentSettings
            Settings of the experiment.
        """
        experiment = cls(output_dir)
        experiment.output_dir.mkdir(parents=True, exist_ok=True)

        config = {
            "version": __version__,
            "env": settings.env.name,
            "algorithm": settings.algo.name,
            "datetimeCreated": str(datetime.now()),
            "settings": settings.to_dict(),
            "runs": [
                {"seed": int(seed), "status": "running", "n_eval_points": 0}
                for seed in settings.run.seeds
            ],
        }
        jsonschema.validate(instance=config, schema=SCHEMA)

        with experiment._lock():
            experiment._write(config)
        return experiment

    def _write(self, config):
        with open(self.path, "w", encoding="utf-8") as f:
            json.dump(config, f, indent=2)

    def _read(self):
        with open(self.path, encoding="utf-8") as f:
            return json.load(f)

    @property
    def config(self):
        with self._lock():
            return self._read()

    def update_run(self, seed, **kwargs):
        """Update the entry of one seed and validate the result."""
        with self._lock():
            config = self._read()
            for run in config["runs"]:
                if run["seed"] == seed:
                    run.update(kwargs)
                    break
            else:
                config["runs"].append({"seed": int(seed), **kwargs})

            jsonschema.validate(instance=config, schema=SCHEMA)
            self._write(config)

        logging.debug(f"Updated run of seed {seed}: {kwargs}")
        return config
