import json
from fractions import Fraction as Fr

import pytest

from sgtrees.cli import decimal_str, main, read_table_csv
from sgtrees.vertexdist import full_table


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_counts(capsys):
    code, out, _ = run(capsys, "counts", "--n", "2")
    assert code == 0
    assert "f = 524880  (= 2^4 * 3^8 * 5^1)" in out
    assert "g = 486000" in out and "h = 1350000" in out
    code, _, err = run(capsys, "counts", "--n", "99")
    assert code == 2 and "exceeds bound" in err


def test_vertex(capsys):
    code, out, _ = run(capsys, "vertex", "--n", "2", "--address", "a[1,1]", "--format", "json")
    doc = json.loads(out)
    vals = [Fr(doc[f"F{j}"]["num"], doc[f"F{j}"]["den"]) for j in (1, 2, 3, 4)]
    assert code == 0 and sum(vals) == 1
    code, out, _ = run(capsys, "vertex", "--n", "3", "--address", "o")
    assert "1591/2025" in out and "0/1" in out
    code, _, err = run(capsys, "vertex", "--n", "2", "--address", "a[1")
    assert code == 2 and "cannot parse" in err


def test_table_csv_round_trip(capsys):
    code, out, _ = run(capsys, "table", "--n", "2", "--format", "csv")
    lines = out.strip().splitlines()
    assert code == 0
    assert lines[0] == "address,p,q,F1,F2,F3,F4"
    assert len(lines) == 16
    parsed = read_table_csv(out)
    assert parsed == {str(a): d for a, d in full_table(2).items()}


def test_table_json_and_file(capsys, tmp_path):
    target = tmp_path / "t.json"
    code, _, _ = run(capsys, "table", "--n", "1", "--format", "json", "--out", str(target))
    doc = json.loads(target.read_text())
    assert code == 0 and len(doc["vertices"]) == 6
    assert set(doc["vertices"][0]["F1"]) == {"num", "den", "decimal"}


def test_phi(capsys):
    code, out, _ = run(capsys, "phi", "--n", "2")
    for frac in ("163/450", "5257/12150", "2203/12150", "289/12150"):
        assert frac in out
    code, out, _ = run(capsys, "phi", "--limit", "--compare-square")
    assert "10957/40464" in out and "0.270783906682" in out
    assert "0.294544918208" in out
    code, _, err = run(capsys, "phi")
    assert code == 2


def test_graph_export(capsys):
    code, out, _ = run(capsys, "graph", "--n", "1")
    doc = json.loads(out)
    assert code == 0 and len(doc["vertices"]) == 6 and len(doc["edges"]) == 9


def test_oracle_export(capsys):
    code, out, _ = run(capsys, "oracle", "--engine", "mtt", "--n", "1")
    doc = json.loads(out)
    assert doc["engine"] == "mtt" and (doc["f"], doc["g"], doc["h"]) == (54, 30, 50)


def test_verify_exit_codes(capsys, monkeypatch):
    import sgtrees.verify as v

    monkeypatch.setattr(v, "check_sampler", lambda seed, trials, workers: (True, "stub"))
    code, out, _ = run(capsys, "verify", "--level", "sampler")
    assert code == 0 and out.startswith("PASS")
    monkeypatch.setattr(v, "check_sampler", lambda seed, trials, workers: (False, "stub"))
    code, out, _ = run(capsys, "verify", "--level", "sampler")
    assert code == 1 and out.startswith("FAIL")


def test_bad_usage_exit_code(capsys):
    assert main(["nosuch"]) == 2


@pytest.mark.parametrize("x, text", [(Fr(1, 2), "0.5"), (Fr(2, 3), "0.666666666667"), (Fr(0), "0")])
def test_decimal_rendering(x, text):
    assert decimal_str(x) == text
