import json
from pathlib import Path

import pytest

from sumdilates.cli import run

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


def test_hconst_json(tmp_path, capsys):
    out = tmp_path / "h.json"
    assert run(["hconst", "--field", "t^2-2", "--dilate", "t", "--json", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["h_lo"] <= 5.82842712 + 1e-8 and data["h_hi"] >= 5.82842712 - 1e-8
    assert set(data) >= {"field", "dilates", "ideal_norm_factor", "h_lo", "h_hi"}


def test_hconst_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("SUMDILATES_CACHE", str(tmp_path / "cache"))
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(["hconst", "--field", "t^3-2", "--dilate", "t", "--json", str(a)]) == 0
    assert run(["hconst", "--field", "t^3-2", "--dilate", "t", "--json", str(b)]) == 0
    assert a.read_text() == b.read_text()
    assert len(list((tmp_path / "cache").iterdir())) == 1


def test_analyze_sec11(tmp_path):
    out = tmp_path / "a.json"
    assert run(["analyze", "--mats", str(CONFIGS / "sec11.json"), "--json", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["pre_commuting"] == "false" and data["irreducible"] == "true" and data["coprime"] is True


def test_deterministic_json(tmp_path):
    outs = []
    for i in range(2):
        p = tmp_path / f"o{i}.json"
        assert run(["analyze", "--mats", str(CONFIGS / "companion_sqrt2.json"), "--seed", "5", "--json", str(p)]) == 0
        outs.append(p.read_bytes())
    assert outs[0] == outs[1]


def test_sumset_and_extremal(tmp_path):
    pts = tmp_path / "p.txt"
    pts.write_text("0\n1\n2\n")
    out = tmp_path / "s.txt"
    assert run(["sumset", "--points", str(pts), "--mats", "[[[1]],[[2]]]", "--out", str(out)]) == 0
    assert len(out.read_text().split()) == 7
    csv_path = tmp_path / "e.csv"
    assert run(["extremal", "--field", "t^2-2", "--dilate", "t", "--schedule", "5,10", "--csv", str(csv_path)]) == 0
    assert csv_path.read_text().splitlines()[0].startswith("n,size_a,size_sum")


def test_ld_flags_regularize_verify(tmp_path):
    j = tmp_path / "ld.json"
    assert run(["ld", "--config", str(CONFIGS / "ld_example.json"), "--json", str(j)]) == 0
    assert json.loads(j.read_text())["volume"] == "1/3"
    assert run(["flags", "--field", "t^2-2", "--dilate", "1/2*t", "--n", "1"]) == 0
    assert run(["regularize", "--config", str(CONFIGS / "regularize_half.json")]) == 0
    assert run(["verify-cts", "--config", str(CONFIGS / "interval.json")]) == 0


@pytest.mark.parametrize("argv", [["hconst", "--bogus"], ["nosuch"], ["hconst", "--field", "t^2-4", "--dilate", "t"], ["ld", "--config", "/nonexistent.json"], ["flags", "--field", "t^2-2", "--dilate", "t", "--n", "1,2"]])
def test_input_errors(argv):
    assert run(argv) == 2


def test_refusal_exit_code(tmp_path):
    pts = tmp_path / "p.txt"
    pts.write_text("".join(f"{x}\n" for x in range(200)))
    assert run(["sumset", "--points", str(pts), "--mats", "[[[1]],[[1000]]]", "--cap", "100"]) == 1


def test_selftest_subset():
    assert run(["selftest", "--only", "1,4,5"]) == 0


def test_bench_small_schedule(tmp_path):
    out = tmp_path / "b.json"
    assert run(["bench", "--schedule", "4,8", "--json", str(out)]) == 0
    rows = json.loads(out.read_text())["rows"]
    assert [r["n"] for r in rows[:2]] == [4, 8]
    assert rows[-1]["task"] == "linear vs naive"


def test_sumset_quadratic_points():
    assert run(["sumset", "--field", "t^2-2", "--dilate", "t",
                "--points", str(CONFIGS / "unit_corner.txt"), "--points", str(CONFIGS / "unit_corner.txt")]) == 0
