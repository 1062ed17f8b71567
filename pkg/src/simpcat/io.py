"""JSON documents for every input and output kind, and the bundled example names.

Every document is an object with a ``kind`` tag and an optional ``name``.
Object and morphism references are by name; simplicial payloads use the
``sset`` schema, whose face rows are ``[dim, cell, face_index,
target_cell, degeneracy_word]``.
"""

from __future__ import annotations

import json
import os
import re
from typing import Any

from .enriched.pushout import Attaching
from .enriched.value import Value, ValueMap, label_name
from .enriched.vcat import VCategory, VFunctor, VGraph
from .errors import InputError
from .fincat import CatFunctor, FinCategory, PresentedCategory, Quiver, INVERSE_SUFFIX
from .simpset import Simplex, SimplicialMap, SSet, generator

__all__ = ["KINDS", "dumps", "load", "parse", "emit", "sset_doc", "fincat_doc", "presented_doc", "vcat_doc",
           "vgraph_doc", "functor_doc", "map_doc", "attaching_of", "bundled", "bundled_names"]

KINDS = ("sset", "fincat", "presented", "vcat", "vgraph", "functor", "map")
EXTENSIONS = tuple("." + k for k in KINDS) + (".json",)


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _field(doc: dict, key: str, where: str):
    if not isinstance(doc, dict):
        raise InputError(f"{where}: expected an object")
    if key not in doc:
        raise InputError(f"{where}: missing field '{key}'")
    return doc[key]


def _index(names, name, where: str) -> int:
    try:
        return list(names).index(name)
    except ValueError:
        raise InputError(f"{where}: unknown name '{name}'") from None


# ---------------------------------------------------------------------------
# simplicial sets


def sset_doc(X: SSet, name: str | None = None) -> dict:
    doc = {"kind": "sset", "max_dim": X.max_dim, "cells": [list(n) for n in X.names], "faces": X.face_entries()}
    if name:
        doc["name"] = name
    return doc


def _parse_sset(doc: dict) -> SSet:
    max_dim = _field(doc, "max_dim", "sset")
    cells = _field(doc, "cells", "sset")
    faces = _field(doc, "faces", "sset")
    if not isinstance(max_dim, int) or max_dim < 0:
        raise InputError("sset.max_dim: expected a non-negative integer")
    return SSet.from_face_entries(max_dim, cells, faces)


def _simplex_by_name(X: SSet, d: int, name: str, where: str) -> Simplex:
    key = ("by_name", d)
    table = X._cache.get(key)
    if table is None:
        table = X._cache[key] = {X.name(s): s for s in X.simplices(d)}
    if name not in table:
        raise InputError(f"{where}: no {d}-simplex named '{name}'")
    return table[name]


# ---------------------------------------------------------------------------
# categories


def fincat_doc(C: FinCategory, name: str | None = None) -> dict:
    doc = {"kind": "fincat", "objects": list(C.objects),
           "homs": [[a, b, ms] for a, b, ms in C.homs_table()],
           "compose": [[C.name(g), C.name(f), C.name(gf)] for (g, f), gf in sorted(C.comp.items())],
           "ids": [C.name(i) for i in C.identities]}
    if name:
        doc["name"] = name
    return doc


def _parse_fincat(doc: dict) -> FinCategory:
    return FinCategory.from_table(_field(doc, "objects", "fincat"), _field(doc, "homs", "fincat"),
                                  _field(doc, "compose", "fincat"), _field(doc, "ids", "fincat"))


def _word(P: PresentedCategory, path: tuple) -> list[str]:
    return [P.path_name(path)] if not path[2] else [P.letter_name(c) for c in path[2]]


def presented_doc(P: PresentedCategory, name: str | None = None) -> dict:
    Q = P.quiver
    doc = {"kind": "presented", "vertices": list(Q.vertices),
           "edges": [[n, Q.vertices[s], Q.vertices[t]] for n, s, t in Q.edges],
           "relations": [[_word(P, u), _word(P, v)] for u, v in P.relations],
           "inverses": [Q.edges[e][0] for e in sorted(P.inverses)]}
    if name:
        doc["name"] = name
    return doc


def _parse_presented(doc: dict) -> PresentedCategory:
    vertices = tuple(_field(doc, "vertices", "presented"))
    edges = []
    for row in _field(doc, "edges", "presented"):
        if len(row) != 3:
            raise InputError(f"presented.edges: malformed entry {row!r}")
        n, s, t = row
        edges.append((n, _index(vertices, s, "presented.edges"), _index(vertices, t, "presented.edges")))
    Q = Quiver(vertices, tuple(edges))
    problems = Q.validate()
    if problems:
        raise InputError("presented.edges: " + problems[0])
    names = [e[0] for e in edges]
    inverses = frozenset(_index(names, n, "presented.inverses") for n in doc.get("inverses", []))
    P = PresentedCategory(Q, (), inverses)
    ends = P.ends()

    def path(word, where):
        if len(word) == 1 and word[0].startswith("id_") and word[0][3:] in vertices:
            v = vertices.index(word[0][3:])
            return (v, v, ())
        if not word:
            raise InputError(f"{where}: empty word; write id_<vertex>")
        first = P.letter(word[0])
        return P.path(ends[first][0], word)

    rels = []
    for k, row in enumerate(_field(doc, "relations", "presented")):
        if len(row) != 2:
            raise InputError(f"presented.relations[{k}]: expected two words")
        u, v = path(row[0], f"presented.relations[{k}]"), path(row[1], f"presented.relations[{k}]")
        if (u[0], u[1]) != (v[0], v[1]):
            raise InputError(f"presented.relations[{k}]: the two words have different endpoints")
        rels.append((u, v))
    return PresentedCategory(Q, tuple(rels), inverses)


# ---------------------------------------------------------------------------
# values and enriched categories


def _value_doc(V: Value) -> tuple[dict, dict]:
    """Payload and ``(level, element) -> printed name`` (discrete values use level 0)."""
    if V.discrete:
        names = {(0, x): label_name(x) for x in V.levels[0]}
        if len(set(names.values())) != len(names):
            raise InputError("set value: two elements print the same")
        return {"elements": [names[0, x] for x in V.levels[0]]}, names
    X, names = V.to_sset_with_names()
    return {"sset": sset_doc(X)}, names


def _parse_value(doc: dict, where: str) -> Value:
    if not isinstance(doc, dict):
        raise InputError(f"{where}: expected an object")
    if "elements" in doc:
        return Value.from_set(doc["elements"])
    if "sset" in doc:
        return Value.from_sset(_parse_sset(doc["sset"]))
    raise InputError(f"{where}: expected 'elements' or 'sset'")


def _top(homs) -> int:
    dims = [v.dim for v in homs if not v.discrete]
    return min(dims) if dims else 0


def _printer(V: Value, names: dict):
    return lambda n, x: names[0 if V.discrete else n, x]


def vcat_doc(C: VCategory, attach: Attaching | None = None, name: str | None = None) -> dict:
    N = len(C.objects)
    payloads, printers = {}, {}
    for a in range(N):
        for b in range(N):
            payload, names = _value_doc(C.homs[a, b])
            payloads[a, b] = payload
            printers[a, b] = _printer(C.homs[a, b], names)
    top = 0 if C.discrete else C.dim
    compose = []
    for a in range(N):
        for b in range(N):
            for c in range(N):
                for n in range(top + 1):
                    for f in C.homs[a, b].level(n):
                        for g in C.homs[b, c].level(n):
                            compose.append([C.objects[a], C.objects[b], C.objects[c], n, printers[b, c](n, g),
                                            printers[a, b](n, f), printers[a, c](n, C.compose(a, b, c, n, g, f))])
    doc = {"kind": "vcat", "objects": list(C.objects),
           "homs": [[C.objects[a], C.objects[b], payloads[a, b]] for a in range(N) for b in range(N)],
           "ids": [printers[a, a](0, C.ids[a]) for a in range(N)],
           "compose": sorted(compose)}
    if attach is not None:
        S_doc, S_names = _value_doc(attach.S)
        T_doc, T_names = _value_doc(attach.T)
        sp, tp = _printer(attach.S, S_names), _printer(attach.T, T_names)
        top = 0 if attach.S.discrete else attach.levels()
        hp = printers[attach.x, attach.y]
        doc["attach"] = {
            "x": C.objects[attach.x], "y": C.objects[attach.y], "S": S_doc, "T": T_doc,
            "f": sorted([n, sp(n, s), tp(n, attach.f(n, s))] for n in range(top + 1) for s in attach.S.level(n)),
            "h": sorted([n, sp(n, s), hp(n, attach.h(n, s))] for n in range(top + 1) for s in attach.S.level(n)),
        }
    if name:
        doc["name"] = name
    return doc


def _parse_homs(doc: dict, objects, kind: str) -> dict:
    homs = {}
    for row in _field(doc, "homs", kind):
        if len(row) != 3:
            raise InputError(f"{kind}.homs: malformed entry")
        a, b, payload = row
        key = (_index(objects, a, f"{kind}.homs"), _index(objects, b, f"{kind}.homs"))
        if key in homs:
            raise InputError(f"{kind}.homs: pair ({a}, {b}) given twice")
        homs[key] = _parse_value(payload, f"{kind}.homs ({a}, {b})")
    for a in range(len(objects)):
        for b in range(len(objects)):
            if (a, b) not in homs:
                raise InputError(f"{kind}.homs: missing pair ({objects[a]}, {objects[b]})")
    return homs


def _parse_vcat(doc: dict) -> VCategory:
    objects = tuple(_field(doc, "objects", "vcat"))
    homs = _parse_homs(doc, objects, "vcat")
    ids = tuple(_field(doc, "ids", "vcat"))
    if len(ids) != len(objects):
        raise InputError(f"vcat.ids: expected {len(objects)} identities")
    discrete = all(v.discrete for v in homs.values())
    top = 0 if discrete else _top(homs.values())
    N = len(objects)
    comp = {(a, b, c): tuple({} for _ in range(top + 1)) for a in range(N) for b in range(N) for c in range(N)}
    for row in _field(doc, "compose", "vcat"):
        if len(row) != 7:
            raise InputError(f"vcat.compose: malformed entry {row!r}")
        a, b, c, n, g, f, gf = row
        key = tuple(_index(objects, o, "vcat.compose") for o in (a, b, c))
        if not isinstance(n, int) or not 0 <= n <= top:
            raise InputError(f"vcat.compose: level {n!r} out of range 0..{top}")
        comp[key][n][g, f] = gf
    for (a, b, c), tables in comp.items():
        for n in range(top + 1):
            for f in homs[a, b].level(n):
                for g in homs[b, c].level(n):
                    if (g, f) not in tables[n]:
                        raise InputError(f"vcat.compose: missing entry for pair ({g}, {f}) at level {n} "
                                         f"over ({objects[a]}, {objects[b]}, {objects[c]})")
    return VCategory(objects, homs, comp, ids)


def _parse_value_map(rows, S: Value, T: Value, top: int, where: str) -> ValueMap:
    levels = [dict() for _ in range(1 if S.discrete else top + 1)]
    for row in rows:
        if len(row) != 3:
            raise InputError(f"{where}: malformed entry {row!r}")
        n, x, y = row
        if not isinstance(n, int) or not 0 <= n < len(levels):
            raise InputError(f"{where}: level {n!r} out of range")
        levels[n][x] = y
    for n, table in enumerate(levels):
        for x in S.level(n):
            if x not in table:
                raise InputError(f"{where}: no image for '{x}' at level {n}")
    return ValueMap(S, T, tuple(levels))


def attaching_of(doc: dict, C: VCategory | None = None) -> Attaching | None:
    """The attaching data of a ``vcat`` document, if present."""
    att = doc.get("attach")
    if att is None:
        return None
    C = C if C is not None else _parse_vcat(doc)
    S = _parse_value(_field(att, "S", "vcat.attach"), "vcat.attach.S")
    T = _parse_value(_field(att, "T", "vcat.attach"), "vcat.attach.T")
    x = C.obj(_field(att, "x", "vcat.attach"))
    y = C.obj(_field(att, "y", "vcat.attach"))
    dims = [v.dim for v in (S, T) if not v.discrete] + ([] if C.discrete else [C.dim])
    top = min(dims) if dims else 0
    f = _parse_value_map(_field(att, "f", "vcat.attach"), S, T, top, "vcat.attach.f")
    h = _parse_value_map(_field(att, "h", "vcat.attach"), S, C.homs[x, y], top, "vcat.attach.h")
    return Attaching(C, S, T, f, x, y, h)


def vgraph_doc(G: VGraph, name: str | None = None) -> dict:
    N = len(G.objects)
    doc = {"kind": "vgraph", "objects": list(G.objects),
           "homs": [[G.objects[a], G.objects[b], _value_doc(G.homs[a, b])[0]] for a in range(N) for b in range(N)]}
    if name:
        doc["name"] = name
    return doc


def _parse_vgraph(doc: dict) -> VGraph:
    objects = tuple(_field(doc, "objects", "vgraph"))
    return VGraph(objects, _parse_homs(doc, objects, "vgraph"))


# ---------------------------------------------------------------------------
# functors and maps


def functor_doc(F, name: str | None = None) -> dict:
    if isinstance(F, CatFunctor):
        if not isinstance(F.target, FinCategory):
            raise InputError("functor documents need a finite target category")
        C, D = F.source, F.target
        doc = {"kind": "functor", "source": fincat_doc(C), "target": fincat_doc(D),
               "objects": [[C.objects[a], D.objects[F.obj_map[a]]] for a in range(len(C.objects))],
               "morphisms": [[C.name(m), D.name(F.mor_map[m])] for m in range(len(C.morphisms))]}
    else:
        C, D = F.source, F.target
        src_doc, tgt_doc = vcat_doc(C), vcat_doc(D)
        N = len(C.objects)
        sp = {}
        for V, store in ((C, "s"), (D, "t")):
            for a in range(len(V.objects)):
                for b in range(len(V.objects)):
                    sp[store, a, b] = _printer(V.homs[a, b], _value_doc(V.homs[a, b])[1])
        rows = []
        top = 0 if C.discrete else C.dim
        for a in range(N):
            for b in range(N):
                fa, fb = F.obj_map[a], F.obj_map[b]
                for n in range(1 if C.homs[a, b].discrete else top + 1):
                    for x in C.homs[a, b].level(n):
                        rows.append([C.objects[a], C.objects[b], n, sp["s", a, b](n, x),
                                     sp["t", fa, fb](n, F(a, b, n, x))])
        doc = {"kind": "functor", "source": src_doc, "target": tgt_doc,
               "objects": [[C.objects[a], D.objects[F.obj_map[a]]] for a in range(N)], "maps": sorted(rows)}
    if name:
        doc["name"] = name
    return doc


def _parse_functor(doc: dict):
    src, tgt = _field(doc, "source", "functor"), _field(doc, "target", "functor")
    C, D = parse(src), parse(tgt)
    if type(C) is not type(D) or not isinstance(C, (FinCategory, VCategory)):
        raise InputError("functor: source and target must both be fincat or both be vcat documents")
    obj_map = [None] * len(C.objects)
    for row in _field(doc, "objects", "functor"):
        a, b = row
        obj_map[_index(C.objects, a, "functor.objects")] = _index(D.objects, b, "functor.objects")
    if any(o is None for o in obj_map):
        raise InputError("functor.objects: some object has no image")
    if isinstance(C, FinCategory):
        mor_map = [None] * len(C.morphisms)
        for m, n in _field(doc, "morphisms", "functor"):
            mor_map[C.mor(m)] = D.mor(n)
        if any(m is None for m in mor_map):
            raise InputError("functor.morphisms: some morphism has no image")
        return CatFunctor(C, D, tuple(obj_map), tuple(mor_map))
    N = len(C.objects)
    top = 0 if C.discrete else C.dim
    tables = {(a, b): [dict() for _ in range(1 if C.homs[a, b].discrete else top + 1)]
              for a in range(N) for b in range(N)}
    for row in _field(doc, "maps", "functor"):
        if len(row) != 5:
            raise InputError(f"functor.maps: malformed entry {row!r}")
        a, b, n, x, y = row
        key = (_index(C.objects, a, "functor.maps"), _index(C.objects, b, "functor.maps"))
        if not isinstance(n, int) or not 0 <= n < len(tables[key]):
            raise InputError(f"functor.maps: level {n!r} out of range")
        tables[key][n][x] = y
    maps = {}
    for (a, b), levels in tables.items():
        for n, table in enumerate(levels):
            for x in C.homs[a, b].level(n):
                if x not in table:
                    raise InputError(f"functor.maps: no image for '{x}' at level {n} in "
                                     f"({C.objects[a]}, {C.objects[b]})")
        maps[a, b] = ValueMap(C.homs[a, b], D.homs[obj_map[a], obj_map[b]], tuple(levels))
    return VFunctor(C, D, tuple(obj_map), maps)


def map_doc(M: SimplicialMap, name: str | None = None) -> dict:
    doc = {"kind": "map", "source": sset_doc(M.source), "target": sset_doc(M.target),
           "images": [[M.target.name(s) for s in layer] for layer in M.images]}
    if name:
        doc["name"] = name
    return doc


def _parse_map(doc: dict) -> SimplicialMap:
    X = _parse_sset(_field(doc, "source", "map"))
    Y = _parse_sset(_field(doc, "target", "map"))
    images = _field(doc, "images", "map")
    if len(images) != X.max_dim + 1:
        raise InputError(f"map.images: expected {X.max_dim + 1} dimensions")
    out = []
    for d, layer in enumerate(images):
        if len(layer) != X.count(d):
            raise InputError(f"map.images[{d}]: expected {X.count(d)} images")
        out.append(tuple(_simplex_by_name(Y, d, n, f"map.images[{d}]") for n in layer))
    return SimplicialMap(X, Y, tuple(out))


# ---------------------------------------------------------------------------
# dispatch


_PARSERS = {"sset": _parse_sset, "fincat": _parse_fincat, "presented": _parse_presented, "vcat": _parse_vcat,
            "vgraph": _parse_vgraph, "functor": _parse_functor, "map": _parse_map}


def parse(doc: dict) -> Any:
    kind = _field(doc, "kind", "document")
    if kind not in _PARSERS:
        raise InputError(f"document.kind: unknown kind '{kind}'")
    return _PARSERS[kind](doc)


def emit(obj, name: str | None = None, attach: Attaching | None = None) -> dict:
    if isinstance(obj, SSet):
        return sset_doc(obj, name)
    if isinstance(obj, FinCategory):
        return fincat_doc(obj, name)
    if isinstance(obj, PresentedCategory):
        return presented_doc(obj, name)
    if isinstance(obj, VCategory):
        return vcat_doc(obj, attach, name)
    if isinstance(obj, VGraph):
        return vgraph_doc(obj, name)
    if isinstance(obj, (CatFunctor, VFunctor)):
        return functor_doc(obj, name)
    if isinstance(obj, SimplicialMap):
        return map_doc(obj, name)
    raise InputError(f"cannot emit a {type(obj).__name__}")


# ---------------------------------------------------------------------------
# bundled examples and loading


_GENERATED = re.compile(r"^(delta|boundary)-(\d)$|^horn-(\d)-(\d)$|^xi-(\d)$")


def bundled_names() -> list[str]:
    from . import corpus
    names = list(corpus.category_names())
    names += [f"nerve-of-{n}" for n in corpus.category_names()]
    names += [n for n, _ in corpus.kan_enriched()]
    names += [n for n, _ in corpus.pushout_instances()]
    names += ["delta-N", "boundary-N", "horn-N-I", "xi-N"]
    return names


def bundled(name: str) -> dict:
    """The document for a bundled example name (a kind extension is ignored)."""
    from . import corpus
    from .coherent import xi_category
    from .fincat import nerve
    base = name
    for ext in EXTENSIONS:
        if base.endswith(ext):
            base = base[: -len(ext)]
            break
    if base in corpus.category_names():
        return fincat_doc(corpus.category(base), base)
    if base.startswith("nerve-of-") and base[9:] in corpus.category_names():
        return sset_doc(nerve(corpus.category(base[9:]), 3), base)
    for n, K in corpus.kan_enriched():
        if n == base:
            return vcat_doc(K, name=base)
    for n, data in corpus.pushout_instances():
        if n == base:
            return vcat_doc(data.C, data, base)
    m = _GENERATED.match(base)
    if m:
        if m.group(1):
            n = int(m.group(2))
            kind = "standard" if m.group(1) == "delta" else "boundary"
            return sset_doc(generator(kind, n, max_dim=max(n, 3)), base)
        if m.group(3):
            n, i = int(m.group(3)), int(m.group(4))
            return sset_doc(generator("horn", n, i, max_dim=max(n, 3)), base)
        return vcat_doc(xi_category(int(m.group(5)), 3), name=base)
    raise InputError(f"input: '{name}' is neither a readable file nor a bundled example")


def load(source: str) -> dict:
    """A document from a JSON file, or a bundled example by name."""
    if os.path.exists(source):
        try:
            with open(source, encoding="utf-8") as fh:
                return json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputError(f"{source}: not valid JSON ({exc.msg} at line {exc.lineno})") from None
    return bundled(source)
