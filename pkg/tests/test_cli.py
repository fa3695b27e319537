import json

import pytest

from crossed_double.cli import estimate_checks, main
from crossed_double.exact_linalg import GF
from crossed_double.serialization import Document, documents_equal, load

from conftest import example


@pytest.fixture
def write_example(tmp_path):
    def write(name, group=None, *extra):
        path = tmp_path / f"{name}{'-' + group if group else ''}.json"
        args = ["example", name, "--out", str(path)]
        if group:
            args += ["--group", group]
        assert main(args + list(extra)) == 0
        return path
    return write


def test_example_writes_a_loadable_document(write_example):
    path = write_example("sweedler-classical-qt")
    doc = load(path)
    H, R = example("sweedler-classical-qt")
    assert documents_equal(doc, Document(H, R))


def test_unknown_example_exits_2(capsys):
    assert main(["example", "nope"]) == 2
    assert "unknown example" in capsys.readouterr().err


def test_validate_reports_json(write_example, capsys):
    path = write_example("function-tcoalg", "S3")
    capsys.readouterr()
    assert main(["validate", str(path)]) == 0
    body = json.loads(capsys.readouterr().out)
    assert body["ok"] is True


def test_validate_text_report(write_example, capsys):
    path = write_example("sweedler-z2")
    capsys.readouterr()
    assert main(["validate", str(path), "--report", "text"]) == 0
    assert capsys.readouterr().out.strip()


def test_validate_failing_structure_exits_1(write_example, tmp_path):
    obj = json.loads(write_example("sweedler-z2").read_text())
    rows = obj["antipode"]["0"]
    rows[-1] = rows[-1][:-1] + ["5"]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(obj))
    out = tmp_path / "report.json"
    assert main(["validate", str(bad), "--out", str(out)]) == 1
    report = json.loads(out.read_text())
    assert report["ok"] is False
    assert any(f["axiom"].startswith("antipode") for f in report["failures"])


def test_malformed_input_exits_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert main(["validate", str(bad)]) == 2
    assert main(["validate", str(tmp_path / "missing.json")]) == 2


def test_double_then_validate(write_example, tmp_path):
    src = write_example("sweedler-z2")
    out = tmp_path / "d.json"
    assert main(["double", str(src), "--out", str(out)]) == 0
    doc = load(out)
    assert doc.rmatrix is not None and doc.structure.dims == (32, 32)
    assert doc.metadata["provenance"] == "double"
    assert main(["validate", str(out), "--out", str(tmp_path / "r.json")]) == 0


def test_double_oracle_compare(write_example, tmp_path, capsys):
    src = write_example("sweedler-classical-qt")
    assert main(["double", str(src), "--oracle-compare", "--out", str(tmp_path / "d.json")]) == 0
    err = capsys.readouterr().err
    assert '"oracle.product"' in err


def test_oracle_compare_needs_trivial_group(write_example, tmp_path):
    src = write_example("sweedler-z2")
    assert main(["double", str(src), "--oracle-compare", "--out", str(tmp_path / "d.json")]) == 1


def test_ribbon_of_s3_double(write_example, tmp_path):
    src = write_example("function-tcoalg", "S3")
    d = tmp_path / "d.json"
    rt = tmp_path / "rt.json"
    assert main(["double", str(src), "--out", str(d)]) == 0
    assert main(["ribbon", str(d), "--out", str(rt)]) == 0
    doc = load(rt)
    assert doc.structure.dims == (12,) * 6
    assert doc.twist.kind == "v"
    assert main(["validate", str(rt), "--out", str(tmp_path / "r.json")]) == 0


def test_ribbon_needs_an_r_matrix(write_example):
    assert main(["ribbon", str(write_example("sweedler-z2"))]) == 1


def test_analyze(write_example, tmp_path):
    out = tmp_path / "a.json"
    assert main(["analyze", str(write_example("function-tcoalg", "S3")), "--out", str(out)]) == 0
    body = json.loads(out.read_text())
    assert body["semisimple"] is True
    assert body["factorizability"]["D(H_pk)"]["bijective"] is True
    assert body["factorizability"]["D1"]["bijective"] is False
    assert body["packed_double_embedding"]["ok"] is True
    assert body["semisimple_twist"]["ok"] is True


def test_analyze_nonsemisimple(write_example, tmp_path):
    out = tmp_path / "a.json"
    assert main(["analyze", str(write_example("sweedler-classical-qt")), "--out", str(out)]) == 0
    body = json.loads(out.read_text())
    assert body["semisimple"] is False
    assert body["semisimple_twist"]["precondition"] == "semisimple"


def test_budget_refusal_and_force(write_example, tmp_path, monkeypatch):
    src = write_example("sweedler-z2")
    monkeypatch.setenv("CROSSED_DOUBLE_BUDGET", "10")
    assert main(["double", str(src), "--out", str(tmp_path / "d.json")]) == 2
    assert main(["double", str(src), "--force", "--out", str(tmp_path / "d.json")]) == 0


def test_estimate_grows_with_dimension():
    assert estimate_checks([4, 4], 2) < estimate_checks([32, 32], 2)


@pytest.mark.parametrize("which,kind", [("outer", "talgebra"), ("inner", "tcoalgebra"), ("coop-inner", "tcoalgebra")])
def test_duals(write_example, tmp_path, which, kind):
    out = tmp_path / "dual.json"
    assert main(["dual", which, str(write_example("sweedler-z2")), "--out", str(out)]) == 0
    assert load(out).kind == kind
    assert main(["validate", str(out), "--out", str(tmp_path / "r.json")]) == 0


def test_mirror_twice_is_identity(write_example, tmp_path):
    src = write_example("sweedler-z2")
    m1, m2 = tmp_path / "m1.json", tmp_path / "m2.json"
    assert main(["mirror", str(src), "--out", str(m1)]) == 0
    assert main(["mirror", str(m1), "--out", str(m2)]) == 0
    assert documents_equal(load(src), load(m2))


def test_pack_unpack(write_example, tmp_path):
    src = write_example("group-hopf")
    p, u = tmp_path / "p.json", tmp_path / "u.json"
    assert main(["pack", str(src), "--out", str(p)]) == 0
    assert load(p).kind == "graded-hopf"
    assert main(["pack", str(p)]) == 2
    assert main(["unpack", str(p), "--out", str(u)]) == 0
    assert documents_equal(load(src), load(u))


def test_field_override(write_example, tmp_path):
    src = write_example("sweedler-z2")
    out = tmp_path / "m.json"
    assert main(["mirror", str(src), "--field", "GF5", "--out", str(out)]) == 0
    assert load(out).field == GF(5)


def test_stdout_document(write_example, capsys):
    src = write_example("trivial-k")
    capsys.readouterr()
    assert main(["mirror", str(src)]) == 0
    assert json.loads(capsys.readouterr().out)["kind"] == "tcoalgebra"
