# Copyright 2026 The qmon Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import json
import math

import pytest

import qmon


def test_code_library():
    five = qmon.make_code("five_qubit")
    assert (five.n, five.k) == (5, 1)
    assert len(five.stabilizers) == 4
    assert qmon.validate(five)[0]
    toric = qmon.make_code("toric", 3)
    assert (toric.n, toric.k) == (18, 2)
    again = qmon.code_from_json(toric.to_json())
    assert again.stabilizers == toric.stabilizers
    with pytest.raises(ValueError):
        qmon.make_code("no_such_code")


def test_monitor_verdicts():
    mon = qmon.Monitor(qmon.make_code("five_qubit"))
    assert mon.preserved(".....")
    assert mon.bucket(".....") == "none"
    verdict = mon.verdict("ZZZZZ")
    assert not verdict.preserved
    assert verdict.measured_logicals == ["Z"]
    assert mon.bucket("ZZZZZ") == "Z"
    assert mon.erasure_correctable([0, 1])
    assert not mon.erasure_correctable([0, 1, 2])
    with pytest.raises(ValueError):
        mon.verdict("ZZ")


def test_fast_path_matches_choi_route():
    code = qmon.make_code("steane")
    mon = qmon.Monitor(code)
    for pattern in ["X.Z.Y..", "XXXX...", "ZZZ.ZZZ", "YYYYYYY", "......."]:
        assert mon.preserved(pattern) == qmon.choi_preserved(code, pattern)


def test_level_map_closed_form():
    mon = qmon.Monitor(qmon.make_code("five_qubit"))
    for p in [0.0, 0.3, 0.7, 1.0]:
        p_none, px, py, pz = qmon.level_map(mon, p / 3, p / 3, p / 3)
        assert px + py + pz == pytest.approx((10 * p**3 - p**5) / 9, abs=1e-12)
        assert p_none + px + py + pz == pytest.approx(1.0, abs=1e-12)
    trace = qmon.flow(mon, 0.95 / 3, 0.95 / 3, 0.95 / 3, rounds=3)
    assert len(trace) == 4
    assert trace[-1][0] > trace[0][0]


def test_y_commutant():
    assert qmon.y_commutant_dimension(4) == 8
    assert qmon.y_line_rank(4) == 7
    assert qmon.y_classify(3, "Y" * 18) == "Y1,Y2"
    assert qmon.y_destroy_upper_bound(6, 0.0) == 0.0


def test_haar_purity():
    exact = qmon.predicted_purity_exact(64, 16, 2)
    assert 0.5 < exact < 1
    stats = json.loads(qmon.haar_code_purity(1, 6, 2, 20, seed=3, threads=1))
    assert stats["samples"] == 20
    assert 0.5 <= stats["mean"] <= 1


def test_run_config_deterministic():
    cfg = json.dumps({
        "experiment": "sweep",
        "code": "steane",
        "grid": {"resolution": 2, "pm": 0.5},
        "samples": 50,
        "seed": 2,
    })
    a = qmon.run_config(cfg)
    b = qmon.run_config(cfg)
    assert a == b
    assert a.splitlines()[0].startswith("code,size,rounds,pX,pY,pZ")
    rows = json.loads(qmon.run_config(cfg, "json"))["rows"]
    assert len(rows) == 6
    assert all(0 <= r["preserved"] <= 1 for r in rows)
    with pytest.raises(qmon.ConfigError):
        qmon.run_config('{"experiment": "sweep", "samples": 0}')
    assert not math.isnan(rows[0]["preserved"])
