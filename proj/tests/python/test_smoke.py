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

import csv
import json
import math
import os
import pathlib

import pytest

import synthrisk

SOURCE_DIR = pathlib.Path(
    os.environ.get("SYNTHRISK_SOURCE_DIR", pathlib.Path(__file__).resolve().parents[2]))
SCHEMA = json.loads((SOURCE_DIR / "schemas" / "report.schema.json").read_text())


def test_version():
    assert synthrisk.__version__ == "0.1.0"
    assert synthrisk.REPORT_SCHEMA_VERSION == "1.0"


def test_wilson_interval_contains_rate():
    e = synthrisk.wilson(30, 100)
    lo, hi = e["ci"]
    assert lo < 0.3 < hi
    assert e["n_attacks"] == 100
    # No successes still gives a positive centre and a non-degenerate width.
    z = synthrisk.wilson(0, 50)
    assert z["rate"] > 0 and z["delta"] > 0


def test_wilson_rejects_bad_counts():
    with pytest.raises(ValueError):
        synthrisk.wilson(11, 10)


def test_risk_matches_formula():
    r = synthrisk.risk(0.6, 0.01, 0.2, 0.01)
    assert r["raw"] == pytest.approx((0.6 - 0.2) / 0.8)
    assert r["ci"][0] <= r["value"] <= r["ci"][1]
    s = synthrisk.strength(0.6, 0.03, 0.1, 0.04)
    assert s["value"] == pytest.approx(0.5)
    assert s["delta"] == pytest.approx(0.05)
    assert not s["failed"]


def test_success_curve_and_fit():
    # Integral of n w (1 - w)^(n - 1) over [0, 1].
    assert synthrisk.success_curve(1.0, 100) == pytest.approx(1.0 / 101)
    w = 0.002
    samples = [(n, 2e6 * synthrisk.success_curve(w, n)) for n in (1000, 2000, 4000, 8000)]
    model = synthrisk.fit_correction_model(samples)
    assert model["effective_weight"] == pytest.approx(w, rel=1e-3)
    assert model["amplitude"] == pytest.approx(2e6, rel=1e-3)
    assert not model["degenerate"]


@pytest.fixture(scope="module")
def tables(tmp_path_factory):
    d = tmp_path_factory.mktemp("tables")
    synthrisk.generate_dataset(2400, 11, str(d / "full.csv"))
    with open(d / "full.csv", newline="") as f:
        rows = list(csv.reader(f))
    header, body = rows[0], rows[1:]
    parts = {"train": body[:800], "control": body[800:1400], "release": body[1400:]}
    for name, part in parts.items():
        with open(d / f"{name}.csv", "w", newline="") as f:
            csv.writer(f).writerows([header] + part)
    synthrisk.leaky_synthesize(str(d / "train.csv"), str(d / "release.csv"), 1.0, 600, 3,
                               str(d / "leaky.csv"))
    synthrisk.leaky_synthesize(str(d / "train.csv"), str(d / "release.csv"), 0.0, 600, 3,
                               str(d / "clean.csv"))
    return d


def _config(synthetic):
    return {
        "train": "train.csv",
        "control": "control.csv",
        "synthetic": synthetic,
        "seed": 5,
        "singling_out": {"n_attacks": 100, "modes": ["multivariate"], "n_attrs": [0]},
        "linkability": {"n_attacks": 200,
                        "aux_splits": [{"a": ["sex", "age", "region"],
                                        "b": ["occupation", "income", "tenure"]}],
                        "k": [1]},
        "inference": {"n_attacks": 200, "secrets": ["occupation"], "aux_sizes": [0]},
        "utility": {"n_queries": 100},
    }


def test_evaluate_report_matches_schema(tables):
    jsonschema = pytest.importorskip("jsonschema")
    report = synthrisk.evaluate(_config("leaky.csv"), base_dir=str(tables), workers=1)
    jsonschema.validate(report, SCHEMA)
    assert report["schema_version"] == "1.0"
    assert {s["status"] for s in report["settings"]} == {"ok"}
    # A full copy of the training rows is flagged by every attack.
    for attack in ("linkability", "inference"):
        assert report["aggregates"][attack]["max"] > 0.5


def test_clean_release_has_low_risk(tables):
    report = synthrisk.evaluate(_config("clean.csv"), base_dir=str(tables), workers=1)
    for s in report["settings"]:
        if s["attack"] != "singling_out":
            assert s["risk"]["value"] <= s["risk"]["ci"][1]
            assert s["risk"]["raw"] - s["risk"]["delta"] < 0.1


def test_evaluate_is_deterministic(tables):
    cfg = dict(_config("leaky.csv"), include_timing=False)
    a = synthrisk.evaluate(cfg, base_dir=str(tables), workers=1)
    b = synthrisk.evaluate(cfg, base_dir=str(tables), workers=2)
    assert "timing" not in a
    assert a == b


def test_evaluate_from_path(tables):
    path = tables / "config.json"
    path.write_text(json.dumps(_config("leaky.csv")))
    report = synthrisk.evaluate(path, workers=1)
    assert len(report["settings"]) == 3


def test_bad_config_raises(tables):
    with pytest.raises(ValueError):
        synthrisk.evaluate({"train": "train.csv"}, base_dir=str(tables))
    with pytest.raises(OSError):
        synthrisk.evaluate(_config("absent.csv"), base_dir=str(tables))


def test_utility_self_score(tables):
    u = synthrisk.utility_score(str(tables / "train.csv"), str(tables / "train.csv"), 50, 1)
    assert u["total"] == pytest.approx(100.0)
    assert u["marginal"] == pytest.approx(100.0)


def test_linearity_rows():
    rows = synthrisk.linearity({
        "generate_rows": 1500, "split": {"train": 500, "control": 300, "release": 500},
        "m": 400, "f_l": [0.0, 1.0], "aux_sizes": [0], "seeds": [2], "n_attacks": 100,
        "secret": "occupation",
    })
    assert {r["status"] for r in rows} == {"ok"}
    risk = {r["f_l"]: float(r["risk"]) for r in rows if r["attack"] == "inference"}
    # 400 of the 500 training rows are copied at f_l = 1.
    assert math.isfinite(risk["1"]) and risk["1"] > 0.5
    assert risk["0"] < risk["1"] - 0.3
