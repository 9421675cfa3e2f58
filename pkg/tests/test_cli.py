import json

import numpy as np
import pytest

import resist_sketch as rs
from resist_sketch.cli import main


@pytest.fixture
def tri_file(tmp_path):
    target = tmp_path / "tri.txt"
    target.write_text("3 3\n0 1 1\n1 2 1\n0 2 1\n", encoding="utf-8")
    return str(target)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_leverage_stdout_json(tri_file, capsys):
    code, out, _ = run(capsys, "leverage", "--graph", tri_file)
    assert code == 0
    report = json.loads(out)
    assert report["mode"] == "leverage"
    np.testing.assert_allclose(report["results"]["leverage"], 2.0 / 3.0, atol=1e-10)


def test_out_file(tri_file, tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = run(
        capsys, "solve", "--graph", tri_file, "--seed", "5", "--out", str(target)
    )
    assert code == 0
    assert out == ""
    report = json.loads(target.read_text(encoding="utf-8"))
    assert report["mode"] == "solve"
    assert report["results"]["sparsified"]["success"] in (True, False)


def test_verify_mode(tri_file, capsys):
    code, out, _ = run(
        capsys, "verify", "--graph", tri_file, "--trials", "10", "--seed", "3"
    )
    assert code == 0
    results = json.loads(out)["results"]
    assert results["trials"] == 10
    assert len(results["records"]) == 10


def test_r_override_marks_off_theorem(tri_file, capsys):
    code, out, _ = run(
        capsys, "sparsify", "--graph", tri_file, "--r-override", "32"
    )
    assert code == 0
    results = json.loads(out)["results"]
    assert results["r"] == 32 and results["off_theorem"] is True


def test_b_file_used(tri_file, tmp_path, capsys):
    b_path = tmp_path / "b.txt"
    b_path.write_text("1.0\n0.0\n-1.0\n", encoding="utf-8")
    code, out, _ = run(
        capsys, "solve", "--graph", tri_file, "--b", str(b_path), "--seed", "2"
    )
    assert code == 0
    assert json.loads(out)["config"]["b_path"] == str(b_path)


class TestExitCodes:
    def test_missing_graph_file(self, capsys):
        code, _, err = run(capsys, "leverage", "--graph", "/nope/missing.txt")
        assert code == 1
        assert err != ""

    def test_unknown_subcommand(self, tri_file, capsys):
        code, _, _ = run(capsys, "shred", "--graph", tri_file)
        assert code == 1

    def test_bad_epsilon(self, tri_file, capsys):
        code, _, _ = run(capsys, "solve", "--graph", tri_file, "--epsilon", "1.5")
        assert code == 1

    def test_missing_required_option(self, capsys):
        code, _, _ = run(capsys, "solve")
        assert code == 1

    def test_parse_error_names_line(self, tmp_path, capsys):
        bad = tmp_path / "bad.txt"
        bad.write_text("2 1\n0 0 1.0\n", encoding="utf-8")
        code, _, err = run(capsys, "leverage", "--graph", str(bad))
        assert code == 1
        assert "line 2" in err

    def test_sample_count_parameter_error(self, tri_file, capsys):
        # log argument falls below 1 for tiny c0
        code, _, err = run(
            capsys, "solve", "--graph", tri_file, "--c0", "0.001"
        )
        assert code == 1
        assert "error" in err.lower()

    def test_rhs_length_mismatch(self, tri_file, tmp_path, capsys):
        b_path = tmp_path / "b.txt"
        b_path.write_text("1.0\n2.0\n", encoding="utf-8")
        code, _, _ = run(capsys, "solve", "--graph", tri_file, "--b", str(b_path))
        assert code == 1


def test_cli_determinism(tri_file, tmp_path, capsys):
    a_path, b_path = tmp_path / "a.json", tmp_path / "b.json"
    for target in (a_path, b_path):
        code, _, _ = run(
            capsys,
            "verify", "--graph", tri_file, "--trials", "8", "--seed", "42",
            "--out", str(target),
        )
        assert code == 0
    a = json.loads(a_path.read_text(encoding="utf-8"))
    b = json.loads(b_path.read_text(encoding="utf-8"))
    a["results"].pop("timings")
    b["results"].pop("timings")
    assert a == b


def test_version_flag(capsys):
    code, out, _ = run(capsys, "--version")
    assert code == 0
    assert rs.VERSION in out
