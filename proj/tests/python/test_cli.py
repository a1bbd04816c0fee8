# Copyright 2026 The qsd developers.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#    http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import json
import math
import os
import subprocess

import pytest

CLI = os.environ.get("QSD_CLI")

pytestmark = pytest.mark.skipif(
    CLI is None or not os.path.exists(CLI),
    reason="QSD_CLI does not point at the built binary",
)

ORTHOGONAL = {
    "dim": 2,
    "states": [
        {"prior": 0.5, "matrix": [[[1, 0], [0, 0]], [[0, 0], [0, 0]]]},
        {"prior": 0.5, "matrix": [[[0, 0], [0, 0]], [[0, 0], [1, 0]]]},
    ],
}

ZERO_PLUS = {
    "dim": 2,
    "states": [
        {"prior": 0.5, "matrix": [[[1, 0], [0, 0]], [[0, 0], [0, 0]]]},
        {"prior": 0.5, "matrix": [[[0.5, 0], [0.5, 0]], [[0.5, 0], [0.5, 0]]]},
    ],
}


def three_state_problem():
    phi = math.pi / 16.0
    c, s = math.cos(phi), math.sin(phi)
    half = 1.0 / math.sqrt(2.0)

    def mat(a, b):
        return [
            [[a * a, 0], [a * b, 0]],
            [[a * b, 0], [b * b, 0]],
        ]

    return {
        "dim": 2,
        "states": [
            {"prior": 0.4, "matrix": mat(c, -s)},
            {"prior": 0.4, "matrix": mat(c, s)},
            {"prior": 0.2, "matrix": mat(half, half)},
        ],
    }


def run(*args, expect=0):
    result = subprocess.run(
        [CLI, *args], capture_output=True, text=True, timeout=300
    )
    assert result.returncode == expect, result.stderr
    return result


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def test_solve_orthogonal(tmp_path):
    problem = write(tmp_path, "orth.json", ORTHOGONAL)
    result = run("solve", problem)
    doc = json.loads(result.stdout)
    assert doc["report"]["converged"] is True
    assert doc["report"]["success_probability"] == pytest.approx(1.0, abs=1e-9)
    assert doc["certificate"]["gap"] <= 1e-10


def test_solve_two_state_value(tmp_path):
    problem = write(tmp_path, "zp.json", ZERO_PLUS)
    result = run("solve", problem)
    doc = json.loads(result.stdout)
    assert doc["report"]["success_probability"] == pytest.approx(
        0.5 + 0.5 / math.sqrt(2.0), abs=1e-6
    )


def test_solve_rejects_non_hermitian(tmp_path):
    bad = json.loads(json.dumps(ORTHOGONAL))
    bad["states"][0]["matrix"][0][1] = [0.5, 0]
    problem = write(tmp_path, "bad.json", bad)
    result = run("solve", problem, expect=1)
    assert "states[0].matrix" in result.stderr


def test_solve_reports_all_validation_errors(tmp_path):
    bad = json.loads(json.dumps(ORTHOGONAL))
    bad["states"][0]["prior"] = 0.7
    bad["states"][1]["prior"] = 0.4
    problem = write(tmp_path, "priors.json", bad)
    result = run("solve", problem, expect=1)
    assert "priors sum" in result.stderr


def test_solve_nonconvergence_exit_code(tmp_path):
    problem = write(tmp_path, "three.json", three_state_problem())
    run("solve", problem, "--max-iter", "2", expect=2)


def test_byte_identical_reruns(tmp_path):
    problem = write(tmp_path, "zp.json", ZERO_PLUS)
    first = run("simulate", problem, "--optimal", "--trials", "100000",
                "--seed", "7")
    second = run("simulate", problem, "--optimal", "--trials", "100000",
                 "--seed", "7")
    assert first.stdout == second.stdout
    doc = json.loads(first.stdout)
    assert doc["sigma_distance"] <= 5.0


def test_simulate_validates_trials(tmp_path):
    problem = write(tmp_path, "orth.json", ORTHOGONAL)
    run("simulate", problem, "--optimal", "--trials", "0", expect=1)


def test_certify(tmp_path):
    doc = json.loads(json.dumps(ORTHOGONAL))
    doc["povm"] = [
        [[[1, 0], [0, 0]], [[0, 0], [0, 0]]],
        [[[0, 0], [0, 0]], [[0, 0], [1, 0]]],
    ]
    path = write(tmp_path, "certify.json", doc)
    result = run("certify", path)
    out = json.loads(result.stdout)
    assert out["success_probability"] == pytest.approx(1.0)
    assert out["certificate"]["gap"] <= 1e-10


def test_export_sdp(tmp_path):
    problem = write(tmp_path, "orth.json", ORTHOGONAL)
    out_path = tmp_path / "orth.dat-s"
    result = run("export-sdp", problem, "--out", str(out_path))
    info = json.loads(result.stdout)
    assert info["mdim"] == 4
    assert info["nblock"] == 2
    lines = out_path.read_text().splitlines()
    assert lines[0] == "4 = mDIM"
    assert lines[2] == "4 4"


def test_export_three_state_blocks(tmp_path):
    problem = write(tmp_path, "three.json", three_state_problem())
    out_path = tmp_path / "three.dat-s"
    result = run("export-sdp", problem, "--out", str(out_path))
    info = json.loads(result.stdout)
    assert info["mdim"] == 4
    assert info["nblock"] == 3


def test_scenario(tmp_path):
    csv_path = tmp_path / "sweep.csv"
    result = run(
        "scenario", "--phi", repr(math.pi / 16.0), "--points", "41",
        "--out", str(csv_path), "--jobs", "2",
    )
    summary = json.loads(result.stdout)
    assert summary["failed_points"] == 0
    assert summary["boundary_II_III"] == pytest.approx(0.839390, abs=1e-3)

    lines = csv_path.read_text().splitlines()
    assert lines[0] == "xi,phi,error_rate,outcome_count,region,gap,iterations"
    assert len(lines) == 42
    first = lines[1].split(",")
    assert float(first[0]) == 0.0
    assert float(first[2]) <= 1e-9
    last = lines[-1].split(",")
    assert float(last[0]) == 1.0
    assert float(last[2]) == pytest.approx(0.308658, abs=1e-6)


def test_scenario_rejects_bad_phi(tmp_path):
    run("scenario", "--phi", "1.0", "--out", str(tmp_path / "x.csv"), expect=1)


def test_unknown_flag_is_invalid_input():
    run("solve", "--definitely-not-a-flag", expect=1)
