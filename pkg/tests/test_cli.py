import subprocess
import sys

import pytest

from pseudohadamard.cli import main
from pseudohadamard.matrix import BinMatrix, is_hadamard, is_pseudo_hadamard
from pseudohadamard.matrix_io import MatrixStreamHeader, dumps, loads

M_SECTION1 = BinMatrix.from_lists([[1, 1, 1, 0], [1, 1, 0, 1], [1, 0, 1, 1], [0, 1, 1, 1]])


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return _write


def test_generate_to_file(tmp_path, capsys):
    out = tmp_path / "m6.txt"
    assert main(["generate", "--size", "6", "--output", str(out)]) == 0
    header, ms = loads(out.read_text())
    assert header == MatrixStreamHeader(6, "row-gram") and len(ms) == 6
    err = capsys.readouterr().err
    assert ": 6 matrices" in err and "matrices/minute" in err


def test_generate_stdout(capsys):
    assert main(["generate", "--size", "2"]) == 0
    assert capsys.readouterr().out == "PHM v1 m=2 kind=row-gram\n01\n11\n\n"


def test_generate_limit_and_progress(tmp_path, capsys):
    out = tmp_path / "m10.txt"
    assert main(["generate", "-m", "10", "--limit", "300", "-o", str(out), "--progress-every", "100"]) == 0
    assert len(loads(out.read_text())[1]) == 300
    err = capsys.readouterr().err
    assert err.count("matrices,") == 3 and "limit reached" in err


@pytest.mark.parametrize("size", ["7", "0", "4", "-2"])
def test_generate_bad_size(size, capsys):
    assert main(["generate", "--size", size]) == 2
    assert "incorrect size" in capsys.readouterr().err


def test_generate_unwritable(tmp_path):
    assert main(["generate", "--size", "2", "-o", str(tmp_path / "missing" / "x.txt")]) == 1


@pytest.mark.parametrize("argv", [[], ["generate"], ["verify", "--input", "x", "--mode", "nope"], ["frobnicate"]])
def test_usage_errors(argv):
    assert main(argv) == 2


@pytest.mark.parametrize("size, expected", [("2", "1"), ("6", "6"), ("10", "1440")])
def test_count(size, expected, capsys):
    assert main(["count", "--size", size]) == 0
    assert capsys.readouterr().out.strip() == expected


def test_count_limit(capsys):
    assert main(["count", "--size", "10", "--limit", "17"]) == 0
    assert capsys.readouterr().out.strip() == "17"


def test_count_bad_size():
    assert main(["count", "--size", "9"]) == 2


def test_oracle(capsys):
    assert main(["oracle", "--size", "2"]) == 0
    assert capsys.readouterr().out == "total 2\ncanonical 1\n"


@pytest.mark.parametrize("size", ["3", "14"])
def test_oracle_bad_size(size):
    assert main(["oracle", "--size", size]) == 2


def test_verify_generated(tmp_path, capsys):
    out = tmp_path / "m6.txt"
    main(["generate", "--size", "6", "-o", str(out)])
    capsys.readouterr()
    assert main(["verify", "--input", str(out), "--mode", "row-gram"]) == 0
    assert capsys.readouterr().out.splitlines()[-1] == "6 checked, 6 passed, 0 failed"


def test_verify_equal_weight_matrix_fails(write, capsys):
    path = write("m.txt", dumps(MatrixStreamHeader(4), [M_SECTION1]))
    assert main(["verify", "-i", path, "--mode", "hadamard"]) == 3
    assert "matrix 0: FAIL" in capsys.readouterr().out


def test_verify_empty(write, capsys):
    path = write("e.txt", "PHM v1 m=6 kind=row-gram\n")
    assert main(["verify", "-i", path, "--mode", "pseudo"]) == 0
    assert "0 checked" in capsys.readouterr().out


def test_verify_malformed(write, capsys):
    path = write("bad.txt", "PHM v1 m=2 kind=pseudo\n01\n12\n\n")
    assert main(["verify", "-i", path, "--mode", "pseudo"]) == 1
    assert "line 3" in capsys.readouterr().err


def test_verify_missing_file(tmp_path):
    assert main(["verify", "-i", str(tmp_path / "nope.txt"), "--mode", "pseudo"]) == 1


def test_lift_and_extract(write, tmp_path):
    src = write("p.txt", dumps(MatrixStreamHeader(2, "pseudo"), [BinMatrix.from_lists([[0, 1], [1, 1]])]))
    lifted = tmp_path / "h.txt"
    assert main(["lift", "-i", src, "-o", str(lifted)]) == 0
    header, hs = loads(lifted.read_text())
    assert header == MatrixStreamHeader(3, "hadamard")
    assert hs[0].to_lists() == [[1, 1, 0], [1, 0, 1], [0, 1, 1]]
    back = tmp_path / "p2.txt"
    assert main(["extract", "-i", str(lifted), "-o", str(back)]) == 0
    assert back.read_text() == (tmp_path / "p.txt").read_text()


def test_extract_lift_round_trip_on_corpus(generated, tmp_path):
    from pseudohadamard.transform import conjecture_5_1_fix, permute_cols

    fixed = [permute_cols(M, conjecture_5_1_fix(M)) for M in generated[10]]
    src = tmp_path / "p10.txt"
    src.write_text(dumps(MatrixStreamHeader(10, "pseudo"), fixed))
    assert main(["lift", "-i", str(src), "-o", str(tmp_path / "h11.txt")]) == 0
    assert all(is_hadamard(H) for H in loads((tmp_path / "h11.txt").read_text())[1])
    assert main(["extract", "-i", str(tmp_path / "h11.txt"), "-o", str(tmp_path / "back.txt")]) == 0
    assert loads((tmp_path / "back.txt").read_text())[1] == fixed


def test_extract_normalizes_first(write, tmp_path):
    H = BinMatrix.from_lists([[1, 0, 1], [0, 1, 1], [1, 1, 0]])
    src = write("h.txt", dumps(MatrixStreamHeader(3), [H]))
    out = tmp_path / "p.txt"
    assert main(["extract", "-i", src, "-o", str(out)]) == 0
    (P,) = loads(out.read_text())[1]
    assert is_pseudo_hadamard(P) and P.to_lists() == [[0, 1], [1, 1]]


def test_lift_precondition(write, capsys):
    src = write("i.txt", dumps(MatrixStreamHeader(2), [BinMatrix.from_lists([[0, 1], [1, 1]]), BinMatrix.identity(2)]))
    assert main(["lift", "-i", src, "-o", "-"]) == 3
    assert "matrices: 1" in capsys.readouterr().err


def test_lift_wrong_size(write):
    assert main(["lift", "-i", write("x.txt", "PHM v1 m=3 kind=unverified\n")]) == 3


def test_extract_precondition(write, capsys):
    src = write("m.txt", dumps(MatrixStreamHeader(3), [BinMatrix.ones(3)]))
    assert main(["extract", "-i", src]) == 3
    assert "matrices: 0" in capsys.readouterr().err


def test_conjecture_m6(tmp_path, capsys):
    out = tmp_path / "m6.txt"
    main(["generate", "--size", "6", "-o", str(out)])
    capsys.readouterr()
    assert main(["conjecture", "-i", str(out)]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[-1] == "6 checked, 6 witnesses, 0 without witness"
    assert all("column permutation" in line for line in lines[:-1])


def test_conjecture_dual(write, capsys):
    M = BinMatrix.from_lists([[1, 1], [0, 1]])
    src = write("t.txt", dumps(MatrixStreamHeader(2), [M]))
    assert main(["conjecture", "-i", src, "--dual"]) == 0
    assert "matrix 0: row permutation 1 0" in capsys.readouterr().out
    assert main(["conjecture", "-i", src]) == 3


def test_conjecture_precondition(write, capsys):
    src = write("i.txt", dumps(MatrixStreamHeader(2), [BinMatrix.identity(2)]))
    assert main(["conjecture", "-i", src]) == 3
    assert "precondition failed" in capsys.readouterr().err


def test_generate_then_verify_pipeline(tmp_path):
    out = tmp_path / "m10.txt"
    assert main(["generate", "--size", "10", "-o", str(out), "--jobs", "2"]) == 0
    assert main(["verify", "-i", str(out), "--mode", "row-gram"]) == 0


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "pseudohadamard", "count", "--size", "6"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "6"
    proc = subprocess.run([sys.executable, "-m", "pseudohadamard", "count", "--size", "7"], capture_output=True, text=True)
    assert proc.returncode == 2
