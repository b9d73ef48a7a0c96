"""Command-line driver: subcommands, exit codes, determinism."""

import pytest

from glspaths import cli
from glspaths.character import CharacterComparison, CharacterSeries
from glspaths.rootdata import weight


@pytest.fixture
def matrices(tmp_path):
    files = {}
    files["im"] = tmp_path / "im.mat"
    files["im"].write_text("1\n-1\n")
    files["sl2"] = tmp_path / "sl2.mat"
    files["sl2"].write_text("1\n2\n")
    files["mixed"] = tmp_path / "mixed.mat"
    files["mixed"].write_text("2\n2 -1\n-1 -2\n")
    files["bad"] = tmp_path / "bad.mat"
    files["bad"].write_text("2\n2 -1\n0 -2\n")
    files["withbases"] = tmp_path / "withbases.mat"
    files["withbases"].write_text("1\n2\nbases:\nnu 3\n")
    return files


def test_validate(matrices, capsys):
    assert cli.run(["validate", "-m", str(matrices["im"])]) == 0
    assert "imaginary {1}" in capsys.readouterr().out
    assert cli.run(["validate", "-m", str(matrices["bad"])]) == 1
    assert "AsymmetricZero(1,2)" in capsys.readouterr().err


def test_missing_file_is_io_error(matrices, capsys):
    assert cli.run(["validate", "-m", str(matrices["im"]) + ".absent"]) == 3


def test_usage_error(matrices):
    assert cli.run(["enumerate", "-m", str(matrices["im"])]) == 1
    assert cli.run(["orbit", "-m", str(matrices["im"]), "-l", "x", "-d", "2"]) == 1
    assert cli.run(["nonsense"]) == 1


def test_orbit_output(matrices, capsys):
    assert cli.run(["orbit", "-m", str(matrices["im"]), "-l", "2", "-d", "6"]) == 0
    assert capsys.readouterr().out == "lambda\nlambda-2*a1\nlambda-6*a1\n"


def test_enumerate_and_dot(matrices, tmp_path, capsys):
    dot = tmp_path / "out.dot"
    assert cli.run(["enumerate", "-m", str(matrices["sl2"]), "-l", "2", "-d", "4",
                    "--export-dot", str(dot)]) == 0
    assert capsys.readouterr().out == "nodes 3 edges 2 frontier 0\n"
    text = dot.read_text()
    assert text.count("->") == 2 and 'label="1"' in text


def test_char_and_compare(matrices, capsys):
    assert cli.run(["char", "-m", str(matrices["im"]), "-l", "2", "-d", "3"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "# base=lambda depth=3"
    assert cli.run(["compare-char", "-m", str(matrices["im"]), "-l", "2", "-d", "3"]) == 0
    assert capsys.readouterr().out == "equal, 4 terms\n"


def test_compare_mismatch_exit_code(matrices, monkeypatch, capsys):
    fake = CharacterComparison(
        equal=False, differences=(((0,), 1, 2),),
        crystal=CharacterSeries.from_dict(weight(), 1, 1, {(0,): 1}),
        formula=CharacterSeries.from_dict(weight(), 1, 1, {(0,): 2}))
    monkeypatch.setattr(cli, "compare_characters", lambda *a, **k: fake)
    assert cli.run(["compare-char", "-m", str(matrices["im"]), "-l", "2", "-d", "3"]) == 2
    assert "MISMATCH" in capsys.readouterr().out


def test_tensor_iso(matrices, capsys):
    assert cli.run(["tensor-iso", "-m", str(matrices["mixed"]), "-l", "1 0",
                    "-r", "0 1", "-d", "3"]) == 0
    assert "isomorphic" in capsys.readouterr().out


def test_binf(matrices, capsys):
    assert cli.run(["binf", "-m", str(matrices["mixed"]), "-d", "2"]) == 0
    out = capsys.readouterr().out
    assert "weight-zero 1" in out and "axiom-violations 0" in out


def test_file_bases_are_available(matrices, capsys):
    # -l declares "lambda" alongside bases read from the file
    assert cli.run(["char", "-m", str(matrices["withbases"]), "-l", "2", "-d", "1"]) == 0


def test_outputs_are_deterministic(matrices, capsys):
    args = ["char", "-m", str(matrices["mixed"]), "-l", "1 1", "-d", "3"]
    assert cli.run(args) == 0
    first = capsys.readouterr().out
    assert cli.run(args) == 0
    assert capsys.readouterr().out == first
    assert cli.run(args + ["--parallel"]) == 0
    assert capsys.readouterr().out == first


def test_dot_deterministic_across_parallel(matrices, tmp_path):
    a, b = tmp_path / "a.dot", tmp_path / "b.dot"
    base = ["export-dot", "-m", str(matrices["mixed"]), "-l", "1 1", "-d", "3"]
    assert cli.run(base + ["-o", str(a)]) == 0
    assert cli.run(base + ["-o", str(b), "--parallel"]) == 0
    assert a.read_text() == b.read_text()
