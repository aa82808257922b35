"""Command-line behaviour and exit codes."""

import csv
import json

import pytest

from qresum.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eval_uq(capsys):
    code, out, _ = run(capsys, "eval", "uq", "--kind", "E", "--a", "0.3", "--b", "0.2", "--z-mod", "0.4", "--z-arg", "0", "--q", "0.5")
    assert code == 0
    re, im = map(float, out.split()[:2])
    assert abs(im) < 1e-10 and re > 0


def test_eval_json_round_trips(capsys):
    code, out, _ = run(capsys, "eval", "theta_q", "--z", "0.3", "--q", "0.5", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["function"] == "theta_q" and doc["q"] == 0.5
    assert set(doc["value"]) == {"re", "im"}


def test_eval_pqd_at_one(capsys):
    code, out, _ = run(capsys, "eval", "pqd", "--z-mod", "1", "--z-arg", "0", "--lambda", "0.7", "--q", "0.3")
    assert code == 0
    assert [float(v) for v in out.split()[:2]] == [0.0, 0.0]


def test_eval_lambda_on_lattice(capsys):
    code, _, err = run(capsys, "eval", "uq", "--kind", "lambda", "--lambda", "-0.5", "--a", "0.3", "--b", "0.2", "--z", "0.4", "--q", "0.5")
    assert code == 3
    assert "λ on excluded lattice" in err


def test_eval_bad_flag(capsys):
    assert run(capsys, "eval", "uq", "--bogus", "1")[0] == 2


def test_verify_lemma21(capsys, tmp_path):
    out = tmp_path / "r.json"
    code, _, _ = run(capsys, "verify", "--suite", "lemma21", "--out", str(out))
    assert code == 0
    reports = json.loads(out.read_text())
    assert reports and all(r["pass"] for r in reports)
    assert {"identity_id", "point", "lhs", "rhs", "abs_err", "rel_err", "pass", "note"} <= set(reports[0])


def test_verify_downgrade_note(capsys, tmp_path):
    code, _, err = run(capsys, "verify", "--suite", "stokes_monodromy", "--q", "0.5", "--out", str(tmp_path / "m.json"))
    assert code == 0
    assert "too large for double precision" in err


def test_verify_unknown_suite(capsys):
    assert run(capsys, "verify", "--suite", "nope")[0] == 2


def test_table_pqc(capsys, tmp_path):
    out = tmp_path / "t.csv"
    code, _, _ = run(capsys, "table", "--fn", "pqc", "--z-mod-range", "0.1:1.0:64", "--q", "0.01", "--out", str(out))
    assert code == 0
    rows = list(csv.reader(out.open()))
    assert rows[0] == ["z_mod", "re", "im"] and len(rows) == 65


def test_table_is_byte_identical(capsys, tmp_path):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for p in paths:
        run(capsys, "table", "--fn", "pqc", "--z-arg-range", "0:12.56:16", "--z-mod", "0.5", "--q", "0.01", "--out", str(p))
    assert paths[0].read_bytes() == paths[1].read_bytes()


@pytest.mark.parametrize("spec", ["0.1:1.0:0", "0.1:1.0", "a:b:c"])
def test_table_bad_range(capsys, spec):
    assert run(capsys, "table", "--fn", "pqc", "--z-mod-range", spec, "--q", "0.01")[0] == 2
