import csv
import json

import pytest

from pretzeljsj import cli
from pretzeljsj.chainfill import Hyperbolic


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_classify_json(capsys):
    code, out, _ = run(capsys, "classify", "2", "-1", "3", "--json", "--with-oracle")
    assert code == 0
    rec = json.loads(out)
    assert rec["format"] == 1
    assert rec["input"] == [2, -1, 3]
    assert rec["knot"] == "P(5,-1,7)"
    assert rec["case"] == "1.1.4" and rec["tori"] == 2
    assert rec["pieces"] == [{"kind": "seifert_annulus", "order": 2},
                             {"kind": "seifert_annulus", "order": 3}]
    assert rec["oracle"] == {"agrees": True, "pattern": "inf", "verdict": "exceptional", "witness": []}


def test_classify_json_is_byte_stable(capsys):
    first = run(capsys, "classify", "2", "-2", "2", "--json", "--polys")[1]
    second = run(capsys, "classify", "2", "-2", "2", "--json", "--polys")[1]
    assert first == second
    assert first.count("\n") == 1 and ": " not in first


def test_classify_text(capsys):
    code, out, _ = run(capsys, "classify", "2", "2", "2", "--with-oracle")
    assert code == 0
    assert "case 1.1.7: 1 JSJ torus" in out
    assert "oracle: hyperbolic, orbit=4" in out


def test_undecided_exit(capsys):
    code, out, _ = run(capsys, "classify", "2", "2", "2", "--with-oracle", "--budget", "2")
    assert code == 3
    assert "undecided after 2 states" in out


def test_mismatch_exit(capsys, monkeypatch):
    monkeypatch.setattr(cli, "hyperbolic_oracle", lambda *a, **k: Hyperbolic(1, 0))
    code, _, err = run(capsys, "classify", "2", "-1", "3", "--with-oracle")
    assert code == 2
    assert "DISAGREES" in err


@pytest.mark.parametrize("argv", [
    ["classify", "1", "2"],
    ["classify", "1", "2", "x"],
    ["scan", "--range", "0"],
    ["fill", "--link", "3chain", "--slopes", "2,phi"],
    ["fill", "--link", "3chain", "--slopes", "2,0/0,phi"],
    ["fill", "--link", "7chain", "--slopes", "1"],
    ["selfcheck", "--budget", "-1"],
])
def test_usage_errors(argv, capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(argv)
    assert info.value.code == 64


def test_fill_outputs(capsys):
    code, out, _ = run(capsys, "fill", "--link", "5chain", "--slopes", "-2,1/3,-2,phi,phi")
    assert (code, out) == (0, "HYPERBOLIC L10n113 (-2, 1/3, -2, phi, phi) orbit=4\n")
    code, out, _ = run(capsys, "fill", "--link", "3chain", "--slopes", "2,phi,phi")
    assert code == 0
    assert out.startswith("EXCEPTIONAL L6a5 (2, phi, phi) pattern=2 witness_length=0")
    code, out, _ = run(capsys, "fill", "--link", "5chain", "--slopes", "-1,1/2,-1,phi,phi",
                       "--budget", "1")
    assert code == 3 and out.startswith("UNDECIDED")


def test_scan_summary(capsys):
    code, out, _ = run(capsys, "scan", "--range", "1")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "27 triples in [-1,1]^3"
    assert sum(int(line.split(": ")[1]) for line in lines[1:]) == 27


def test_scan_csv_with_oracle(capsys, tmp_path):
    path = tmp_path / "scan.csv"
    code, out, _ = run(capsys, "scan", "--range", "3", "--check-oracle", "--csv", str(path))
    assert code == 0
    assert "0 mismatches, 0 undecided" in out
    rows = list(csv.DictReader(path.open()))
    assert len(rows) == 343
    assert rows[0].keys() == {"p", "q", "r", "case", "tori", "pieces", "oracle"}
    assert {r["oracle"] for r in rows} == {"exceptional", "hyperbolic", "unknot"}
    first = path.read_bytes()
    run(capsys, "scan", "--range", "3", "--check-oracle", "--csv", str(path))
    assert path.read_bytes() == first


def test_scan_io_error(capsys, tmp_path):
    code, _, err = run(capsys, "scan", "--range", "1", "--csv", str(tmp_path / "no" / "x.csv"))
    assert code == 74
    assert "cannot write" in err


def test_polys(capsys):
    code, out, _ = run(capsys, "polys", "1", "1", "1")
    assert code == 0
    assert "alexander: 7t - 13 + 7t^-1 (fox: agrees)" in out
    assert out.rstrip().endswith("(unknot: no)")


def test_group(capsys):
    code, out, _ = run(capsys, "group", "0", "0", "0")
    assert code == 0
    assert "knot group: < a, b, t | t a b t^-1 a^-1, t b t^-1 a^-1 b^-1 >" in out
    assert "cut manifold H1: Z^2" in out
    assert out.rstrip().endswith("matches cut-manifold relator: yes")


def test_selfcheck_small_range(capsys):
    code, out, _ = run(capsys, "selfcheck", "--range", "1")
    assert code == 0
    assert out.count("[PASS]") == 8


def test_selfcheck_tiny_budget_is_undecided(capsys):
    code, out, _ = run(capsys, "selfcheck", "--range", "1", "--budget", "10")
    assert code == 3
