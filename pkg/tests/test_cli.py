import csv
import json
import subprocess
import sys
from pathlib import Path

import pytest

from dycoh.cli import run
from dycoh.config import ConfigError, load_config

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


def write(tmp_path, doc, name="job.json"):
    p = tmp_path / name
    p.write_text(json.dumps(doc), encoding="utf-8")
    return str(p)


def report(out):
    return json.loads((Path(out) / "report.json").read_text(encoding="utf-8"))


Z2_UNIT = {"backend": "vec_g", "field": "F2", "group": {"preset": "cyclic", "n": 2}, "coefficient": {"preset": "unit"}}


def test_betti_z2_unit_f2(tmp_path):
    out = tmp_path / "out"
    assert run(["betti", "--config", write(tmp_path, Z2_UNIT), "--out", str(out)]) == 0
    doc = report(out)
    assert doc["betti"] == [1, 1, 1, 1]
    assert doc["passed"] is True
    rows = list(csv.reader((out / "betti.csv").open(encoding="utf-8")))
    assert rows == [["degree", "dimension"], ["0", "1"], ["1", "1"], ["2", "1"], ["3", "1"]]


def test_betti_field_override(tmp_path):
    out = tmp_path / "out"
    assert run(["betti", "--config", write(tmp_path, Z2_UNIT), "--field", "Q", "--out", str(out)]) == 0
    assert report(out)["betti"] == [1, 0, 0, 0]


def test_equivariant_betti(tmp_path):
    out = tmp_path / "out"
    assert run(["betti", "--config", str(CONFIGS / "z2_skew_primitive_q.json"), "--equivariant", "--out", str(out)]) == 0
    doc = report(out)
    assert doc["betti"] == [1, 0, 0, 0] and doc["equivariant"] is True


def test_sweedler_weak_comp(tmp_path):
    argv = ["check", "--config", str(CONFIGS / "sweedler_q.json"), "--suite", "weak-comp", "--seed", "42", "--samples", "10"]
    assert run(argv + ["--out", str(tmp_path)]) == 0
    doc = report(tmp_path)
    assert doc["suites"][0]["suite"] == "weak-comp" and doc["suites"][0]["seed"] == 42


@pytest.mark.parametrize("name", sorted(p.name for p in CONFIGS.glob("*.json")))
def test_shipped_configs_validate(name, tmp_path):
    assert run(["validate", "--config", str(CONFIGS / name), "--out", str(tmp_path)]) == 0


def test_reports_are_byte_identical(tmp_path):
    cfg = str(CONFIGS / "z2_skew_primitive_q.json")
    a, b = tmp_path / "a", tmp_path / "b"
    assert run(["report", "--config", cfg, "--max-degree", "2", "--samples", "2", "--out", str(a)]) == 0
    assert run(["report", "--config", cfg, "--max-degree", "2", "--samples", "2", "--out", str(b)]) == 0
    assert (a / "report.json").read_bytes() == (b / "report.json").read_bytes()
    assert "wall_time_s" not in report(a)
    assert {s["suite"] for s in report(a)["suites"]} >= {"validate", "complex", "gerstenhaber"}


def test_timings_flag(tmp_path):
    assert run(["betti", "--config", write(tmp_path, Z2_UNIT), "--timings", "--out", str(tmp_path)]) == 0
    assert "betti" in report(tmp_path)["wall_time_s"]


def test_invalid_structure_exits_one(tmp_path):
    doc = {
        "backend": "vec_g",
        "field": "Q",
        "group": {"preset": "cyclic", "n": 2},
        "coefficient": {"grade_dims": [1, 0], "action": [[[1]], [[1]]], "comul": [[2]], "counit": [1]},
    }
    assert run(["validate", "--config", write(tmp_path, doc), "--out", str(tmp_path)]) == 1
    rep = report(tmp_path)
    assert rep["passed"] is False
    failed = [r for s in rep["suites"] for r in s["results"] if r["status"] == "fail"]
    assert failed and failed[0]["witness"]


@pytest.mark.parametrize(
    "patch, pointer",
    [
        ({"coefficient": {"preset": "grouplike", "support": ["e", "b"]}}, "/coefficient/support/1"),
        ({"field": "F4"}, "/field"),
        ({"max_degree": 9}, "/max_degree"),
        ({"max_degree": 5}, "/max_degree"),
        ({"group": {"preset": "symmetric", "n": 4}, "field": "Q"}, "/group"),
        ({"seed": -1}, "/seed"),
        ({"coefficient": {"preset": "skew_primitive", "character": ["1/0", 1]}}, "/coefficient/character/0"),
    ],
)
def test_config_errors_exit_two_with_pointer(tmp_path, patch, pointer):
    doc = dict(Z2_UNIT, **patch)
    assert run(["betti", "--config", write(tmp_path, doc), "--out", str(tmp_path)]) == 2
    rep = report(tmp_path)
    assert rep["error"]["pointer"] == pointer
    assert rep["passed"] is False


def test_missing_config_file(tmp_path):
    assert run(["validate", "--config", str(tmp_path / "nope.json"), "--out", str(tmp_path)]) == 2


def test_hopf_degree_cap():
    with pytest.raises(ConfigError) as exc:
        load_config(str(CONFIGS / "sweedler_q.json"), {"max_degree": 4})
    assert exc.value.pointer == "/max_degree"


def test_convolution_needs_group_algebra():
    doc = {"backend": "hopf", "hopf": {"preset": "sweedler"}, "coefficient": {"preset": "convolution"}}
    with pytest.raises(ConfigError) as exc:
        load_config(doc).backend()
    assert exc.value.pointer == "/coefficient/preset"


def test_console_script_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "dycoh.cli", "betti", "--config", write(tmp_path, Z2_UNIT), "--out", str(tmp_path)],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert "betti (full): [1, 1, 1, 1]" in proc.stdout
