# Copyright 2026 The Synthrisk Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Privacy-risk evaluation of synthetic tabular data."""

import csv
import io
import json
import os

from ._synthrisk import (
    REPORT_SCHEMA_VERSION,
    DataError,
    InvalidArgument,
    IoError,
    __version__,
    fit_correction_model,
    generate_dataset,
    leaky_synthesize,
    risk,
    strength,
    success_curve,
    utility_score,
    wilson,
)
from . import _synthrisk

__all__ = [
    "REPORT_SCHEMA_VERSION",
    "DataError",
    "InvalidArgument",
    "IoError",
    "__version__",
    "evaluate",
    "fit_correction_model",
    "generate_dataset",
    "leaky_synthesize",
    "linearity",
    "risk",
    "strength",
    "success_curve",
    "utility_score",
    "wilson",
]


def _load(config, base_dir):
    """Returns (json text, base dir) for a dict or a path to a JSON file."""
    if isinstance(config, (str, os.PathLike)):
        path = os.fspath(config)
        with open(path, encoding="utf-8") as f:
            text = f.read()
        return text, base_dir if base_dir is not None else os.path.dirname(os.path.abspath(path))
    return json.dumps(config), base_dir if base_dir is not None else os.getcwd()


def evaluate(config, base_dir=None, workers=None):
    """Runs an evaluation config (dict or path) and returns the report as a dict."""
    text, base = _load(config, base_dir)
    return json.loads(_synthrisk.evaluate_json(text, base, workers))


def linearity(config, base_dir=None):
    """Runs a leak-fraction experiment and returns its rows as dicts."""
    text, base = _load(config, base_dir)
    return list(csv.DictReader(io.StringIO(_synthrisk.linearity_csv(text, base))))
