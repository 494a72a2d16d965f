import io
import json

import pytest

from crossnorm import textformat
from crossnorm.cli import main


def run(*argv, stdin=None, monkeypatch=None):
    out = io.StringIO()
    if stdin is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = main(list(argv), out)
    return code, out.getvalue()


def summary(text):
    head, _, block = text.partition("--- summary ---\n")
    return json.loads(block)


@pytest.fixture
def delta3(tmp_path):
    code, text = run("gen", "delta", "3", "4")
    assert code == 0
    path = tmp_path / "d3.json"
    path.write_text(text)
    return path


def test_pipeline_gen_pi_check_dd(delta3, tmp_path, monkeypatch):
    code, doc = run("pi", str(delta3))
    assert code == 0
    assert textformat.loads(doc).trunc_level == 4
    code, text = run("check-dd", stdin=doc, monkeypatch=monkeypatch)
    assert code == 0
    s = summary(text)
    assert s["ok"] and s["basis_sizes"] == [4, 10, 20, 35, 56]


def test_reports_are_deterministic(delta3):
    assert run("check-dd", str(delta3)) == run("check-dd", str(delta3))
    assert run("pi", str(delta3)) == run("pi", str(delta3))


def test_validate(delta3):
    code, text = run("validate", str(delta3))
    assert code == 0
    assert summary(text)["violations"] == 0


def test_validate_reports_violations(tmp_path):
    code, text = run("gen", "delta", "2", "2")
    doc = json.loads(text)
    doc["faces"]["012"] = ["12", "01", "02"]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code, text = run("validate", str(path))
    assert code == 1
    assert summary(text)["violations"] > 0


def test_hal_check():
    code, text = run("hal-check", "--max-dim", "5")
    assert code == 0
    s = summary(text)
    assert s["ok"] and s["checks"]["n=5 HAL"]
    assert run("hal-check", "--max-dim", "1")[0] == 2


def test_cone(delta3):
    code, doc = run("cone", str(delta3), "--trunc", "2", "--vertex", "w")
    assert code == 0
    C = textformat.loads(doc)
    assert "w" in C.objects and C.trunc_level == 3
    assert C.audit_dd() == []


def test_normalize_document_and_report(tmp_path):
    code, text = run("gen", "boundary", "2", "3")
    src = tmp_path / "s1.json"
    src.write_text(text)
    code, doc = run("normalize", str(src))
    assert code == 0
    assert [len(textformat.loads(doc).basis(n)) for n in range(4)] == [3, 3, 0, 0]
    out = tmp_path / "norm.json"
    code, text = run("normalize", str(src), "--report", "-o", str(out))
    assert code == 0
    s = summary(text)
    assert s["ok"] and s["homology"]["normalised"] == ["Z", "Z", "0"]
    assert out.read_text() == doc


def test_homology(tmp_path):
    code, text = run("gen", "nerve", "2", "5")
    src = tmp_path / "bz2.json"
    src.write_text(text)
    code, text = run("homology", str(src))
    assert code == 0
    assert summary(text)["homology"] == ["Z", "Z/2", "0", "Z/2", "0"]
    assert "H_1 = Z/2" in text
    code, text = run("homology", str(src), "--unnormalised", "--max-degree", "2")
    assert summary(text)["homology"] == ["Z", "Z/2", "0"]
    assert run("homology", str(src), "--max-degree", "5")[0] == 2


def test_counterexample():
    code, text = run("counterexample")
    assert code == 0
    assert summary(text)["checks"] == {
        "b^x = b in C(R)": True,
        "b^x != b in C(S)": True,
        "C(i) identifies b^x and b": True,
    }


def test_usage_errors(tmp_path, capsys):
    assert run("frobnicate")[0] == 2
    assert run("gen", "delta", "3", "--bogus")[0] == 2
    assert run("pi", str(tmp_path / "missing.json"))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run("pi", str(bad))[0] == 2
    assert "line 1" in capsys.readouterr().err
    assert run("gen", "nerve")[0] == 2
    assert run("gen", "boundary", "0")[0] == 2


def test_trunc_above_document_level(delta3):
    assert run("pi", str(delta3), "--trunc", "7")[0] == 2


def test_capacity_error_exit_code(tmp_path):
    torus = {
        "trunc_level": 2,
        "objects": ["p"],
        "normalizer": "presentation",
        "basis": {
            "1": [{"name": "x", "source": "p", "target": "p"}, {"name": "y", "source": "p", "target": "p"}],
            "2": [{"name": "t", "target": "p", "boundary": "- x - y + x + y"}],
        },
    }
    path = tmp_path / "torus.json"
    path.write_text(json.dumps(torus))
    assert run("check-dd", str(path), "--budget", "50")[0] == 2


def test_nerve_from_table(tmp_path):
    table = tmp_path / "z3.json"
    table.write_text(json.dumps([[0, 1, 2], [1, 2, 0], [2, 0, 1]]))
    code, text = run("gen", "nerve", "--table", str(table), "--trunc", "2")
    assert code == 0
    assert json.loads(text)["trunc_level"] == 2
    table.write_text(json.dumps([[0, 1], [0, 1]]))
    assert run("gen", "nerve", "--table", str(table))[0] == 2
