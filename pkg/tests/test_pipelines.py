import pytest

from hadamard_forge import pipelines as P
from hadamard_forge.codec import load_table
from hadamard_forge.equiv import ClassStore
from hadamard_forge.gs import gs_assemble, is_hadamard
from hadamard_forge.codec import hex_decode


def test_expectations_bundle():
    e = P.load_expectations()
    assert sum(e["bs87"]["per_row"]) == e["bs87"]["classes"] == 558
    assert sum(e["bs87"]["orbit_sizes"]) == e["bs87"]["enumerated"]
    assert e["full"]["union"] + e["full"]["transpose_new"] == e["full"]["total"]
    assert [e[f"yang{k}"]["classes"] for k in range(1, 5)] == [192, 208, 64, 64]
    for k in (1, 2, 4):
        assert sum(e[f"yang{k}"]["products"].values()) == e[f"yang{k}"]["classes"]


def test_expectations_from_path(tmp_path):
    p = tmp_path / "e.toml"
    p.write_text('[yang3]\nclasses = 1\n')
    assert P.load_expectations(str(p)) == {"yang3": {"classes": 1}}


def test_matrix_of_both_forms():
    x = load_table(5)[0]
    h = P.matrix_of(x)
    assert is_hadamard(h)
    assert P.matrix_of(h.to_raw()) == h


def test_yang_units_shape():
    assert set(P.yang_units(1)) == {"yang1:ns1-bs32", "yang1:ns1-bs32:swap", "yang1:ns2-bs21", "yang1:ns2-bs21:swap"}
    assert set(P.yang_units(4)) == {"yang4:bs21-bs32", "yang4:bs32-bs21"}
    for build in P.yang_units(3).values():
        quads = build()
        assert len(quads) == 1024
        assert all(q.m == q.n == 15 for q in quads)


def test_yang3_run_and_resume(tmp_path):
    path = tmp_path / "y3.jsonl"
    sec = P.run_yang(3, ClassStore(path))
    assert sec["classes"] == 64
    assert sec["units"] == {"yang3:nn2-bs21": 32, "yang3:nn2-bs21:swap": 32}
    assert sec["printed_sign"] == {"valid": 512, "total": 1024}
    store = ClassStore(path)
    assert all(store.is_done(t) for t in P.yang_units(3))
    again = P.run_yang(3, store)
    assert again["classes"] == 64
    assert again["seconds"] < sec["seconds"]


def test_yang3_matches_table5():
    store = ClassStore()
    P.run_yang(3, store)
    assert store.certs("yang3:") == set(P.table_certs(5))


def test_partial_report_checks():
    store = ClassStore()
    report = P.run_full(store, pipelines=["yang3"])
    assert report.union is None and report.tables == {}
    checks = P.check_report(report, P.load_expectations())
    assert [c.name for c in checks] == ["yang3 classes", "yang3 units"]
    assert all(c.ok for c in checks)
    assert checks[0].line() == "[PASS] yang3 classes: expected 64, got 64"
    assert "yang3: 64 classes" in report.summary()
    assert '"union": null' in report.to_json()


def test_check_line_failure():
    assert P.Check("x", 1, 2).line() == "[FAIL] x: expected 1, got 2"


def test_table_set_summary():
    s = P.table_set_summary()
    assert s["union"] == 1012
    assert s["overlaps"]["table3&table4"] == 24
    assert s["overlaps"]["table4&table5"] == 8
    assert s["overlaps"]["table2&rest"] == 42
    assert s["transpose_new"] == 747 and s["total"] == 1759
