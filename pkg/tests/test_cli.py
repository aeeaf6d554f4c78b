import json

import pytest

from schemelab import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_scheme_dump(capsys):
    code, out, _ = run(capsys, "scheme", "--name", "lee", "--params", "2,5", "--eigen")
    d = json.loads(out)
    assert code == 0 and d["classes"] == 6 and len(d["P"]) == 6


def test_scheme_mixed_ambient(capsys):
    code, out, _ = run(capsys, "scheme", "--name", "mixed", "--params", "1:4,1:2,1:2,1:2,1:2")
    d = json.loads(out)
    assert code == 0 and d["points"] == 64 and "P" not in d


def test_scheme_csv(capsys):
    code, out, _ = run(capsys, "scheme", "--name", "hamming", "--params", "2,2", "--format", "csv")
    lines = out.split("\r\n")
    assert code == 0 and lines[0].startswith("index,relation_label")
    assert '"(1)"' not in out and lines[2].startswith("1,(1)")


def test_usage_errors(capsys):
    assert run(capsys, "scheme", "--name", "lee", "--params", "2")[0] == 2
    assert run(capsys, "scheme", "--name", "lee", "--params", "a,b")[0] == 2
    with pytest.raises(SystemExit) as ex:
        cli.main(["scheme", "--name", "nope"])
    assert ex.value.code == 2


@pytest.mark.parametrize("example,want", [
    ("lee5-c2", {"M": 5, "M_of_s": 5, "tight": True}),
    ("mixed-perfect", {"M": 8, "M_of_s": 26}),
    ("lee13-kernel", {"perfect": True, "e": 2}),
])
def test_code_examples(capsys, example, want):
    code, out, _ = run(capsys, "code", "--example", example)
    d = json.loads(out)
    assert code == 0
    assert {k: d[k] for k in want} == want


def test_code_file_and_lp(capsys, tmp_path):
    f = tmp_path / "c.json"
    f.write_text(json.dumps({"scheme": "hamming", "params": "3,2", "points": [[0, 0, 0], [1, 1, 1]]}))
    code, out, _ = run(capsys, "code", "--code", str(f), "--lp")
    d = json.loads(out)
    assert code == 0 and d["lp"]["bound"] == 2 and d["lp"]["primal"]["certified"]
    f.write_text(json.dumps({"scheme": "hamming", "params": "3,2", "points": [[0, 0, 5]]}))
    assert run(capsys, "code", "--code", str(f))[0] == 2


def test_design(capsys):
    code, out, _ = run(capsys, "design", "--example", "lee5-c2", "--t", "2")
    d = json.loads(out)
    assert code == 0 and d["rao"]["tight"] and d["rao"]["bound"] == 5
    code, out, _ = run(capsys, "design", "--example", "lee5-c2", "--T", "1,2,4")
    assert code == 0 and json.loads(out)["rao"]["kind"] == "degree"


def test_lp(capsys, tmp_path):
    code, out, _ = run(capsys, "lp", "--name", "hamming", "--params", "3,2", "--M", "0,3")
    d = json.loads(out)
    assert code == 0 and d["certified"] and d["primal"]["objective"] == 2
    f = tmp_path / "p.json"
    f.write_text(json.dumps({"A": [[1, 1], [1, -1]], "M": [0, 1]}))
    code, out, _ = run(capsys, "lp", "--in", str(f))
    assert code == 0 and json.loads(out)["strong_duality"]


def test_repro_filter_and_stable_manifest(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    code, out, _ = run(capsys, "repro", "--filter", "lee", "--json", str(a))
    assert code == 0 and "criterion 1: PASS" in out
    run(capsys, "repro", "--filter", "lee", "--json", str(b), "--jobs", "2")
    assert a.read_bytes() == b.read_bytes()
    man = json.loads(a.read_text())
    assert man["failed"] == 0
    assert {c["origin"] for c in man["checks"]} <= {"published", "recomputed", "definitional"}
