"""The command-line experiment runner."""

import json

from wittlab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_witt_polys_writes_table(tmp_path, capsys):
    path = tmp_path / "polys.txt"
    code, out = run(capsys, "witt-polys", "--p", "2", "--n", "1",
                    "--out", str(path))
    assert code == 0
    text = path.read_text()
    assert "S 2 0 : 1 0,1 ; 1 1,0" in text
    assert "S 2 1 : 1 0,0,0,1 ; 1 0,0,1,0 ; -1 1,1,0,0" in text
    # idempotent
    code, _ = run(capsys, "witt-polys", "--p", "2", "--n", "1",
                  "--out", str(path))
    assert code == 0 and path.read_text() == text


def test_witt_polys_single_index(tmp_path, capsys):
    path = tmp_path / "p3.txt"
    code, _ = run(capsys, "witt-polys", "--p", "3", "--n", "0",
                  "--out", str(path))
    assert code == 0
    lines = [ln for ln in path.read_text().splitlines()
             if ln.startswith("S ")]
    assert lines == ["S 3 0 : 1 0,1 ; 1 1,0"]


def test_witt_polys_rejects_composite(capsys):
    code = main(["witt-polys", "--p", "4", "--n", "1"])
    err = capsys.readouterr().err
    assert code == 2
    assert "not prime" in err


def test_vanish_certificate(capsys):
    code, out = run(capsys, "vanish", "--N", "2", "--p", "2", "--n", "3",
                    "--divisor", "-1*H0", "--j", "1")
    assert code == 0
    record = json.loads(out.splitlines()[0])
    assert record["vanish"] is True
    assert record["method"] == "LES-certificate"


def test_vanish_brute_nonvanishing(capsys):
    code, out = run(capsys, "vanish", "--N", "1", "--divisor", "-2*H0",
                    "--j", "1", "--n", "2", "--p", "2", "--brute")
    assert code == 0
    records = [json.loads(line) for line in out.splitlines()]
    brute = [r for r in records if r["type"] == "brute"][0]
    assert brute["log_p_order"] == 4
    les = [r for r in records if r["type"] == "les-order"][0]
    assert les["log_p_order"] == 4


def test_vanish_j_beyond_cover(capsys):
    code, out = run(capsys, "vanish", "--N", "2", "--p", "2", "--n", "2",
                    "--divisor", "-2*H0", "--j", "5", "--brute")
    assert code == 0
    records = [json.loads(line) for line in out.splitlines()]
    brute = [r for r in records if r["type"] == "brute"][0]
    assert brute["log_p_order"] == 0


def test_growth_column(capsys):
    code, out = run(capsys, "growth", "--N", "1", "--p", "2", "--n", "2",
                    "--s", "1..5")
    assert code == 0
    rows = out.strip().splitlines()
    values = [int(line.split(",")[1]) for line in rows[1:]]
    assert values == [5, 8, 11, 14, 17]
    assert all(line.endswith("True") for line in rows[1:])


def test_frobenius_all_injective(capsys):
    code, out = run(capsys, "frobenius", "--N", "1", "--p", "2",
                    "--s", "1..6")
    assert code == 0
    records = [json.loads(line) for line in out.splitlines()]
    assert len(records) == 6
    assert all(r["injective"] for r in records)


def test_trace_split_passes(capsys):
    code, out = run(capsys, "trace-split", "--p", "2", "--ell", "3",
                    "--q", "4", "--n", "2", "--samples", "50")
    assert code == 0
    record = json.loads(out.strip())
    assert record["pass"] and record["split_failures"] == 0
