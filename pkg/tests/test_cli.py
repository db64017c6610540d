import json

import pytest

from hga import (
    BoundQuiverPresentation,
    Quiver,
    presentation_from_dict,
    presentation_to_dict,
    zero_relation,
)
from hga.cli import main


def write(path, data):
    path.write_text(json.dumps(data), encoding="utf-8")


def gentle_chain_dict():
    q = Quiver(["1", "2", "3"], [("a1", "1", "2"), ("a2", "2", "3")])
    p = BoundQuiverPresentation(q, [zero_relation(("a1", "a2"))])
    return presentation_to_dict(p)


def test_auslander_counts(tmp_path):
    out = tmp_path / "a.json"
    assert main(["auslander", "--n", "4", "--d", "2",
                 "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert (rep["vertices"], rep["arrows"]) == (10, 12)


def test_auslander_roundtrip(tmp_path):
    out = tmp_path / "a.json"
    main(["auslander", "--n", "3", "--d", "1", "--out", str(out)])
    rep = json.loads(out.read_text())
    p = presentation_from_dict(rep["presentation"])
    assert presentation_to_dict(p) == rep["presentation"]


def test_tuples_count(tmp_path):
    out = tmp_path / "t.json"
    assert main(["tuples", "--d", "2", "--m", "7", "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["count"] == len(rep["tuples"]) == 10


def test_collections_catalan(tmp_path):
    out = tmp_path / "c.json"
    assert main(["collections", "--d", "1", "--m", "6",
                 "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["count"] == 14
    assert all(len(c) == 4 for c in rep["collections"])


def test_collections_scale_cap(tmp_path, monkeypatch):
    monkeypatch.setenv("HGA_CAP", "3")
    out = tmp_path / "c.json"
    assert main(["collections", "--d", "1", "--m", "6",
                 "--out", str(out)]) == 3


def test_endo_projectives(tmp_path):
    col = tmp_path / "col.json"
    write(col, {"tuples": [[1, 3], [1, 4]]})
    out = tmp_path / "endo.json"
    assert main(["endo", "--n", "2", "--d", "1",
                 "--collection", str(col), "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert (rep["endDim"], rep["extDim"]) == (3, 0)


def test_check_gentle_pass_and_fail(tmp_path):
    cover = tmp_path / "cover.json"
    e = tmp_path / "e.json"
    write(cover, gentle_chain_dict())
    write(e, ["1", "2", "3"])
    out = tmp_path / "cert.json"
    assert main(["check-gentle", "--d", "1", "--cover", str(cover),
                 "--e", str(e), "--out", str(out)]) == 0
    assert json.loads(out.read_text())["verdict"] == "pass"
    assert main(["check-gentle", "--d", "2", "--cover", str(cover),
                 "--e", str(e), "--out", str(out)]) in (0, 1)


def test_reduce_gentle_input_trivial(tmp_path):
    alg = tmp_path / "g.json"
    write(alg, gentle_chain_dict())
    out = tmp_path / "trace.json"
    assert main(["reduce", str(alg), "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["steps"] == []
    assert rep["sgInvariant"]["cycleLengths"] == []


def test_homdims_report(tmp_path):
    alg = tmp_path / "g.json"
    write(alg, gentle_chain_dict())
    out = tmp_path / "hd.json"
    assert main(["homdims", str(alg), "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["globalDim"] == 2
    assert rep["injDimOfA"] == rep["projDimOfDA"]


def test_export_dot(tmp_path, capsys):
    alg = tmp_path / "g.json"
    write(alg, gentle_chain_dict())
    assert main(["export-dot", str(alg)]) == 0
    text = capsys.readouterr().out
    assert "->" in text and "digraph" in text


def test_missing_file_exit_two(tmp_path):
    assert main(["homdims", str(tmp_path / "nope.json")]) == 2


def test_bad_json_exit_two(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{", encoding="utf-8")
    assert main(["homdims", str(bad)]) == 2


def test_usage_error_exit_two():
    with pytest.raises(SystemExit) as exc:
        main(["auslander", "--n", "4"])
    assert exc.value.code == 2


def test_byte_identical_reports(tmp_path):
    out1 = tmp_path / "r1.json"
    out2 = tmp_path / "r2.json"
    for out in (out1, out2):
        main(["collections", "--d", "2", "--m", "7", "--out", str(out)])
    assert out1.read_bytes() == out2.read_bytes()


def test_verify_example_negative(tmp_path):
    alg = tmp_path / "g.json"
    write(alg, gentle_chain_dict())
    mods = tmp_path / "m.json"
    write(mods, [{"dims": {"1": 1, "2": 0, "3": 0}, "maps": {}}])
    out = tmp_path / "v.json"
    rc = main(["verify-example", "--algebra", str(alg),
               "--modules", str(mods), "--out", str(out)])
    assert rc == 1
    rep = json.loads(out.read_text())
    assert not rep["pass"]
    assert any(f["check"] == "gorensteinProjective" for f in rep["failures"])
