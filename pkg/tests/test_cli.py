import json

import pytest

from termesh.cli import main

from test_triangulation import SQUARE_ELE, SQUARE_NODE


@pytest.fixture
def square_files(tmp_path):
    (tmp_path / "sq.node").write_text(SQUARE_NODE)
    (tmp_path / "sq.ele").write_text(SQUARE_ELE)
    return tmp_path


def test_square_files_to_off(square_files):
    out = square_files / "out.off"
    code = main(["--node", str(square_files / "sq.node"), "--ele", str(square_files / "sq.ele"),
                 "--off", str(out), "--verify"])
    assert code == 0
    assert out.read_text().splitlines()[-1] == "4 0 1 2 3"


def test_random_run_writes_stats(tmp_path):
    stats = tmp_path / "s.json"
    assert main(["--random", "1000", "--seed", "7", "--verify", "--stats", str(stats)]) == 0
    data = json.loads(stats.read_text())
    assert data["polygon_count"] >= data["region_count"]
    assert data["polygon_count"] <= data["region_count"] + data["tip_count"]
    assert "total_seconds" in data


def test_malformed_ele_names_the_line(square_files, capsys):
    (square_files / "bad.ele").write_text("2 3 0\n1 1 2 3\n2 1 3 nope\n")
    code = main(["--node", str(square_files / "sq.node"), "--ele", str(square_files / "bad.ele")])
    assert code == 2
    assert "bad.ele:3:" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [[], ["--random", "10", "--node", "x"], ["--node", "a"], ["--bogus"],
                                  ["--random", "10", "--reps", "0"], ["--random", "10", "--precision", "3"]])
def test_usage_errors(argv):
    assert main(argv) == 1


def test_bench_csv(capsys):
    assert main(["--bench", "100,1000", "--reps", "2"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0].startswith("n,triangles,polygons,")
    assert [l.split(",")[0] for l in lines[1:]] == ["100", "1000"]


def test_verification_failure_exit_code(monkeypatch, tmp_path):
    from termesh import cli
    from termesh.triangulation import Issue
    monkeypatch.setattr(cli, "verify", lambda *a, **k: [Issue("partition", "injected")])
    assert main(["--random", "50", "--verify"]) == 3


def test_internal_error_exit_code(monkeypatch):
    from termesh import cli
    from termesh.errors import InternalConsistencyError

    def boom(*a, **k):
        raise InternalConsistencyError("injected")
    monkeypatch.setattr(cli, "run_pipeline", boom)
    assert main(["--random", "50"]) == 4


def test_dump_triangulation_roundtrip(tmp_path):
    prefix = tmp_path / "mesh"
    assert main(["--random", "80", "--seed", "3", "--dump-triangulation", str(prefix), "--off", str(tmp_path / "a.off")]) == 0
    assert main(["--node", f"{prefix}.node", "--ele", f"{prefix}.ele", "--neigh", f"{prefix}.neigh",
                 "--off", str(tmp_path / "b.off")]) == 0
    assert (tmp_path / "a.off").read_bytes() == (tmp_path / "b.off").read_bytes()
