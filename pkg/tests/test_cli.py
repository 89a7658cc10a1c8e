import json

import pytest

from kanenobu import cli
from kanenobu.obstructions import CuspMatrix


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_family_csv(capsys):
    code, out, _ = run(capsys, "family", "--n", "2", "--p0", "0", "--q0", "1", "--p-range", "-1..1", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "n,p,q,det,cyclic,h1_order"
    assert lines[1:] == ["2,-1,2,25,true,25", "2,0,1,25,true,25", "2,1,0,25,true,25"]


def test_empty_family_exit_code(capsys):
    code, _, err = run(capsys, "family", "--n", "4", "--p0", "0", "--q0", "3", "--p-range", "-2..2")
    assert code == 2 and "empty family" in err


def test_noncyclic_is_an_error(capsys):
    code, _, err = run(capsys, "torsion", "--n", "2", "--p", "0", "--q", "5")
    assert code == 1 and "invariant factors" in err


def test_torsion_json(capsys):
    code, out, _ = run(capsys, "torsion", "--n", "2", "--p", "0", "--q", "1")
    doc = json.loads(out)
    assert code == 0 and doc["schema"] == "kanenobu-report/1"
    assert doc["torsion"]["N"] == 25
    assert doc["torsion"]["coeffs"][:3] == ["-11/25", "-2/5", "1/5"]


def test_dinv_negative_range_and_jobs_are_deterministic(capsys):
    args = ["dinv", "--n", "2", "--p0", "0", "--q0", "1", "--p-range", "-3..-1", "--format", "csv"]
    _, one, _ = run(capsys, *args)
    _, four, _ = run(capsys, *args, "--jobs", "4")
    assert one == four
    assert one.splitlines()[0] == "n,p,q,status,lambda,min_d,max_d,min_d_neg,max_d_neg,obstructed"
    assert all(line.startswith("2,-") for line in one.splitlines()[1:])


def test_verify_suites_pass(capsys):
    for suite in ("cusp", "presentation", "determinants", "weight", "foxmatrix", "jones"):
        code, out, _ = run(capsys, "verify", suite)
        assert code == 0, suite
        assert json.loads(out)["passed"]


def test_verify_cusp_alternate_matrix(tmp_path, capsys):
    rows = [list(r) for r in CuspMatrix.load().rows]
    rows[0][1] += 1
    bad = tmp_path / "bad.txt"
    bad.write_text("\n".join(" ".join(map(str, r)) for r in rows) + "\n")
    code, out, _ = run(capsys, "verify", "cusp", str(bad))
    assert code == 3 and not json.loads(out)["passed"]
    short = tmp_path / "short.txt"
    short.write_text("1 2 3\n")
    code, _, err = run(capsys, "verify", "cusp", str(short))
    assert code == 1 and "8 x 30" in err


def test_out_file(tmp_path, capsys):
    dest = tmp_path / "inv.json"
    code, out, _ = run(capsys, "invariants", "--n", "2", "--p", "0", "--q", "1", "--out", str(dest))
    assert code == 0 and out == ""
    doc = json.loads(dest.read_text())
    assert doc["signature"] == 0 and doc["lambda"] == "-4/25"


def test_bad_range_rejected(capsys):
    with pytest.raises(SystemExit):
        cli.main(["family", "--n", "2", "--p0", "0", "--q0", "1", "--p-range", "5"])
