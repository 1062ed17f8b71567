import json

import pytest

from simpcat import cli, corpus, io
from simpcat.enriched.homotopy import identity_vfunctor
from simpcat.errors import InputError
from simpcat.fincat import free_category, identity_functor, Quiver, nerve
from simpcat.coherent import k_shriek_inclusion

CONCRETE = [n for n in io.bundled_names() if not n.endswith("-N") and not n.endswith("-N-I")] + [
    "delta-2", "boundary-3", "horn-3-1", "xi-2"]


@pytest.mark.parametrize("name", CONCRETE)
def test_bundled_documents_round_trip(name):
    doc = io.bundled(name)
    obj = io.parse(doc)
    attach = io.attaching_of(doc, obj) if doc["kind"] == "vcat" else None
    assert io.emit(obj, name, attach) == doc
    assert io.dumps(doc) == io.dumps(json.loads(io.dumps(doc)))


def test_other_kinds_round_trip():
    P = free_category(Quiver(("a", "b"), (("f", 0, 1), ("g", 1, 0))), groupoid=True)
    for obj in (P, identity_functor(corpus.category("S3")),
                identity_vfunctor(dict(corpus.kan_enriched())["E2xBZ2"]),
                k_shriek_inclusion(corpus.category("Z2-arrow"), 2)):
        doc = io.emit(obj)
        again = io.parse(doc)
        assert io.emit(again) == doc
    G = dict(corpus.kan_enriched())["Z3xBZ2"].graph()
    assert io.vgraph_doc(io.parse(io.vgraph_doc(G))) == io.vgraph_doc(G)


def test_parse_equals_original_category():
    C = corpus.category("square")
    assert io.parse(io.fincat_doc(C)) == C
    X = nerve(C, 3)
    assert io.parse(io.sset_doc(X)).canonical() == X.canonical()


def test_errors_name_the_field():
    with pytest.raises(InputError, match="max_dim"):
        io.parse({"kind": "sset", "cells": [], "faces": []})
    with pytest.raises(InputError, match="unknown kind"):
        io.parse({"kind": "poset"})
    doc = io.bundled("loop-example")
    doc["compose"].pop()
    with pytest.raises(InputError, match="missing entry for pair"):
        io.parse(doc)
    with pytest.raises(InputError, match="neither"):
        io.load("no-such-thing.vcat")


def run(argv, capsys):
    code = cli.main(argv + ["--format", "structured"])
    return code, json.loads(capsys.readouterr().out)


def test_cli_is_kan_on_bundled_nerve(capsys):
    code, rep = run(["is-kan", "nerve-of-Z2.sset", "--max-dim", "3"], capsys)
    assert code == 0 and rep["verdict"] == "pass"


def test_cli_pushout_with_oracle(capsys):
    code, rep = run(["pushout", "loop-example.vcat", "--word-cap", "2", "--oracle"], capsys)
    assert code == 0
    assert rep["counts"]["Map(x,x)"] == 3 and rep["counts"]["oracle_agrees"] is True


def test_cli_oracle_disagreement_never_passes(capsys, monkeypatch):
    monkeypatch.setattr(cli, "compare_with_oracle", lambda R, O: ["seeded disagreement"])
    code, rep = run(["pushout", "loop-example", "--word-cap", "2", "--oracle"], capsys)
    assert code == 1 and rep["verdict"] == "fail" and rep["witnesses"] == ["seeded disagreement"]


def test_cli_check_localize(capsys):
    code, rep = run(["check-localize", "walking-arrow.fincat", "f", "E2.fincat"], capsys)
    assert code == 0 and rep["counts"]["factorizations"] == 1


def test_cli_failures_carry_witnesses(capsys):
    code, rep = run(["is-kan", "nerve-of-walking-arrow", "--max-dim", "2"], capsys)
    assert code == 1 and rep["witnesses"]
    code, rep = run(["check-weq", "walking-arrow", "--terminal"], capsys)
    assert code == 1 and rep["witnesses"]


def test_cli_exit_codes_for_errors_and_truncation(capsys):
    code, rep = run(["nerve", "nonexistent"], capsys)
    assert code == 2 and rep["verdict"] == "error"
    code, rep = run(["is-kan", "delta-1", "--max-dim", "4"], capsys)
    assert code == 3 and rep["verdict"] == "inconclusive"
    code, rep = run(["free-cat", "walking-arrow"], capsys)
    assert code == 2


def test_cli_validate_examples(tmp_path, capsys):
    code, rep = run(["validate", "delta-2"], capsys)
    assert code == 0
    doc = io.bundled("delta-2")
    for row in doc["faces"]:
        if row[0] == 2 and row[2] == 0:
            row[3] = 0 if row[3] else 1
    bad = tmp_path / "bad.sset"
    bad.write_text(json.dumps(doc))
    code, rep = run(["validate", str(bad)], capsys)
    assert code == 1 and any("d0 d1" in w for w in rep["witnesses"])
    doc = io.bundled("Z3")
    doc["compose"].pop(0)
    missing = tmp_path / "missing.fincat"
    missing.write_text(json.dumps(doc))
    code, rep = run(["validate", str(missing)], capsys)
    assert code == 2 and "missing entry for pair" in rep["witnesses"][0]


def test_cli_output_is_deterministic(capsys):
    outs = []
    for _ in range(2):
        cli.main(["coherent-nerve", "E2xBZ2", "--max-dim", "2", "--format", "structured"])
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]


def test_cli_writes_documents(tmp_path, capsys):
    out = tmp_path / "n.sset"
    code, rep = run(["nerve", "S3", "--max-dim", "2", "--out", str(out)], capsys)
    assert code == 0 and "document" not in rep
    X = io.parse(json.loads(out.read_text()))
    assert X.counts() == (1, 5, 25)
    code, rep = run(["is-qcat", str(out)], capsys)
    assert code == 0 and rep["counts"]["unique_fillers"] is True


@pytest.mark.parametrize("argv", [
    ["pi0", "boundary-2"], ["tau", "horn-2-1"], ["iso-core", "retraction"], ["free-monoid", "a", "b"],
    ["free-product", "Z2", "Z3"], ["u-cat", "boundary-1"], ["resolution", "Z3", "--len-cap", "2"],
    ["core", "idempotent"], ["j-core", "delta-2"], ["ho", "delta-1", "--max-dim", "3"],
    ["k-shriek", "walking-arrow"], ["map-point", "E2"], ["localize", "[2]", "01"],
    ["check-fib", "discrete2", "--terminal"], ["corpus", "list"], ["corpus", "emit", "Z2"],
])
def test_cli_commands_pass(argv, capsys):
    code, rep = run(argv, capsys)
    assert code == 0, rep


def test_cli_free_constructions_on_documents(tmp_path, capsys):
    P = free_category(Quiver(("x", "y"), (("f", 0, 1), ("g", 0, 1))))
    path = tmp_path / "pp.presented"
    path.write_text(io.dumps(io.presented_doc(P)))
    code, rep = run(["free-groupoid", str(path), "--len-cap", "3"], capsys)
    assert code == 0 and rep["counts"]["x,y"] == 4
    code, rep = run(["free-cat", str(path), "--len-cap", "3"], capsys)
    assert code == 0 and rep["counts"]["x,y"] == 2 and rep["counts"]["y,x"] == 0
    from simpcat.enriched.value import Value
    from simpcat.enriched.vcat import VGraph
    G = VGraph(("a",), {(0, 0): Value.from_set(["u", "v"])})
    H = VGraph(("a",), {(0, 0): Value.from_set(["w"])})
    g, h = tmp_path / "g.vgraph", tmp_path / "h.vgraph"
    g.write_text(io.dumps(io.vgraph_doc(G)))
    h.write_text(io.dumps(io.vgraph_doc(H)))
    code, rep = run(["tensor", str(g), str(h)], capsys)
    assert code == 0 and rep["counts"]["a,a"] == 2
    code, rep = run(["free-cat", str(g), "--len-cap", "2"], capsys)
    assert code == 0 and rep["counts"]["a,a"] == 7
