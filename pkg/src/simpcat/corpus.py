"""Bundled small examples: finite categories, Kan-enriched categories, attaching data."""

from __future__ import annotations

import itertools
from typing import Callable

from .enriched.homotopy import codiscrete_enriched, group_enriched
from .enriched.pushout import Attaching
from .enriched.value import Value, ValueMap
from .enriched.vcat import VCategory, discrete_vcategory, u_category
from .fincat import FinCategory, PresentedCategory, Quiver
from .errors import InputError
from .simpset import generator

__all__ = ["category", "category_names", "corpus_categories", "kan_enriched", "pushout_instances",
           "retraction_instances", "localization_instances", "localization_targets", "poset_category",
           "cyclic_group", "indiscrete", "product", "coproduct", "presented", "set_attaching", "chain", "group"]


# ---------------------------------------------------------------------------
# builders


def poset_category(objects, less: list[tuple[int, int]]) -> FinCategory:
    """Thin category; ``less`` must already be transitively closed."""
    objects = tuple(objects)
    rel = set(less) | {(a, a) for a in range(len(objects))}
    morphisms = []
    index = {}
    for a, b in sorted(rel):
        index[a, b] = len(morphisms)
        morphisms.append((f"id_{objects[a]}" if a == b else objects[a] + objects[b], a, b))
    ids = [index[a, a] for a in range(len(objects))]
    return FinCategory.from_function(objects, morphisms, ids,
                                     lambda g, f: index[morphisms[f][1], morphisms[g][2]])


def chain(n: int) -> FinCategory:
    """The ordinal ``[n]``."""
    return poset_category([str(k) for k in range(n + 1)], [(a, b) for a in range(n + 1) for b in range(a + 1, n + 1)])


def group(names: list[str], mult: Callable[[int, int], int]) -> FinCategory:
    """One-object category; ``mult(g, f)`` is ``g o f`` and element 0 is the unit."""
    return FinCategory.from_function(["*"], [(n, 0, 0) for n in names], [0], mult)


def cyclic_group(n: int) -> FinCategory:
    return group(["e"] + [f"r{k}" for k in range(1, n)], lambda g, f: (g + f) % n)


def indiscrete(names: list[str]) -> FinCategory:
    n = len(names)
    morphisms = [(f"id_{names[a]}" if a == b else names[a] + names[b], a, b) for a in range(n) for b in range(n)]
    return FinCategory.from_function(names, morphisms, [a * n + a for a in range(n)],
                                     lambda g, f: morphisms[f][1] * n + morphisms[g][2])


def product(C: FinCategory, D: FinCategory) -> FinCategory:
    objects = [f"{a}{b}" if len(a) + len(b) <= 2 else f"{a}|{b}" for a in C.objects for b in D.objects]
    nd = len(D.objects)
    pairs = [(m, n) for m in range(len(C.morphisms)) for n in range(len(D.morphisms))]
    morphisms = [(f"{C.name(m)}|{D.name(n)}", C.src(m) * nd + D.src(n), C.tgt(m) * nd + D.tgt(n))
                 for m, n in pairs]
    index = {p: k for k, p in enumerate(pairs)}
    ids = [index[C.identities[a], D.identities[b]] for a in range(len(C.objects)) for b in range(nd)]
    return FinCategory.from_function(objects, morphisms, ids, lambda g, f: index[
        C.compose(pairs[g][0], pairs[f][0]), D.compose(pairs[g][1], pairs[f][1])])


def coproduct(C: FinCategory, D: FinCategory) -> FinCategory:
    nc, mc = len(C.objects), len(C.morphisms)
    objects = list(C.objects) + list(D.objects)
    morphisms = list(C.morphisms) + [(n, s + nc, t + nc) for n, s, t in D.morphisms]
    ids = list(C.identities) + [i + mc for i in D.identities]

    def comp(g, f):
        return C.compose(g, f) if f < mc else D.compose(g - mc, f - mc) + mc

    return FinCategory.from_function(objects, morphisms, ids, comp)


def presented(vertices, edges, relations=(), inverses=()) -> FinCategory:
    """``edges`` are ``(name, src, tgt)`` with vertex names; relations ``(src, "f;g", "h")`` in path order."""
    vertices = tuple(vertices)
    Q = Quiver(vertices, tuple((n, vertices.index(s), vertices.index(t)) for n, s, t in edges))
    names = [e[0] for e in edges]
    P = PresentedCategory(Q, (), frozenset(names.index(n) for n in inverses))
    rels = tuple((P.path(src, [l for l in u.split(";") if l]), P.path(src, [l for l in v.split(";") if l]))
                 for src, u, v in relations)
    return PresentedCategory(Q, rels, P.inverses).to_fincategory()


def _s3() -> FinCategory:
    perms = sorted(itertools.permutations(range(3)))
    names = ["e", "(12)", "(01)", "(012)", "(021)", "(02)"]
    # perms are sorted, so the identity comes first
    return group(names, lambda g, f: perms.index(tuple(perms[g][perms[f][k]] for k in range(3))))


def _klein() -> FinCategory:
    return group(["e", "a", "b", "c"], lambda g, f: g ^ f)


def _monoid(names: list[str], table: dict[tuple[int, int], int]) -> FinCategory:
    return FinCategory.from_function(["*"], [(n, 0, 0) for n in names], [0],
                                     lambda g, f: f if g == 0 else g if f == 0 else table[g, f])


# ---------------------------------------------------------------------------
# categories


def _idempotent() -> FinCategory:
    return _monoid(["1", "e"], {(1, 1): 1})


_CATEGORIES: dict[str, Callable[[], FinCategory]] = {
    "point": lambda: chain(0),
    "walking-arrow": lambda: presented("01", [("f", "0", "1")]),
    "[2]": lambda: chain(2),
    "[3]": lambda: chain(3),
    "Z2": lambda: cyclic_group(2),
    "Z3": lambda: cyclic_group(3),
    "Z4": lambda: cyclic_group(4),
    "Klein": _klein,
    "S3": _s3,
    "E2": lambda: indiscrete(["a", "b"]),
    "E3": lambda: indiscrete(["a", "b", "c"]),
    "idempotent": _idempotent,
    "nilpotent": lambda: _monoid(["1", "a", "0"], {(1, 1): 2, (1, 2): 2, (2, 1): 2, (2, 2): 2}),
    "E2xIdem": lambda: product(indiscrete(["a", "b"]), _idempotent()),
    "E2xZ2": lambda: product(indiscrete(["a", "b"]), cyclic_group(2)),
    "discrete2": lambda: poset_category(["a", "b"], []),
    "parallel-pair": lambda: presented("ab", [("f", "a", "b"), ("g", "a", "b")]),
    "span": lambda: poset_category(["a", "b", "c"], [(0, 1), (0, 2)]),
    "cospan": lambda: poset_category(["a", "b", "c"], [(0, 2), (1, 2)]),
    "square": lambda: presented("abcd", [("f", "a", "b"), ("g", "b", "d"), ("h", "a", "c"), ("k", "c", "d")],
                                [("a", "f;g", "h;k")]),
    "arrow+Z2": lambda: coproduct(chain(1), cyclic_group(2)),
    "retraction": lambda: presented("ab", [("i", "a", "b"), ("r", "b", "a")], [("a", "i;r", "")]),
    "Z2-arrow": lambda: presented("ab", [("m", "a", "a"), ("f", "a", "b")], [("a", "m;m", "")]),
    "loop-arrow": lambda: presented("ab", [("e", "a", "a"), ("f", "a", "b")], [("a", "e;e", "e"), ("a", "e;f", "f")]),
}


def category_names() -> list[str]:
    return list(_CATEGORIES)


def category(name: str) -> FinCategory:
    if name not in _CATEGORIES:
        raise InputError(f"unknown corpus category '{name}'")
    return _CATEGORIES[name]()


def corpus_categories() -> list[tuple[str, FinCategory]]:
    return [(name, build()) for name, build in _CATEGORIES.items()]


# ---------------------------------------------------------------------------
# enriched examples


def kan_enriched(dim: int = 3) -> list[tuple[str, VCategory]]:
    """Categories whose mapping values are nerves of finite groupoids."""
    return [
        ("Z3xBZ2", group_enriched(cyclic_group(3), cyclic_group(2), dim)),
        ("arrowxBZ3", group_enriched(category("walking-arrow"), cyclic_group(3), dim)),
        ("E2xBZ2", group_enriched(indiscrete(["a", "b"]), cyclic_group(2), dim)),
        ("codiscrete-Z2", codiscrete_enriched(cyclic_group(2), dim)),
        ("codiscrete-parallel-pair", codiscrete_enriched(category("parallel-pair"), dim)),
        ("codiscrete-idempotent", codiscrete_enriched(_idempotent(), dim)),
    ]


def set_attaching(C: FinCategory | VCategory, x: str, y: str, S: list, T: list, h: dict) -> Attaching:
    """Set-valued attaching data with ``S`` included in ``T`` and ``h`` given by morphism names."""
    V = C if isinstance(C, VCategory) else discrete_vcategory(C)
    Sv, Tv = Value.from_set(S), Value.from_set(T)
    xi, yi = V.obj(x), V.obj(y)
    f = ValueMap.from_function(Sv, Tv, lambda n, s: s)
    hm = ValueMap.from_function(Sv, V.homs[xi, yi], lambda n, s: h[s])
    return Attaching(V, Sv, Tv, f, xi, yi, hm)


def _loop_example() -> Attaching:
    C = presented("xy", [("u", "y", "x")])
    return set_attaching(C, "x", "y", [], ["t"], {})


def _horn_in_simplex() -> Attaching:
    """``C = U(Λ²₁)`` and ``T = Δ²``, with ``h`` the identity."""
    horn = Value.from_sset(generator("horn", 2, 1, max_dim=2))
    simplex = Value.from_sset(generator("standard", 2, max_dim=2))
    C = u_category(horn)
    f = ValueMap.from_function(horn, simplex, lambda n, s: s)
    h = ValueMap.from_function(horn, C.homs[0, 1], lambda n, s: s)
    return Attaching(C, horn, simplex, f, 0, 1, h)


def pushout_instances() -> list[tuple[str, Attaching]]:
    arrow = category("walking-arrow")
    return [
        ("loop-example", _loop_example()),
        ("parallel-to-arrow", set_attaching(arrow, "0", "1", ["s"], ["s", "t"], {"s": "f"})),
        ("back-arrow", set_attaching(arrow, "1", "0", [], ["t"], {})),
        ("Z2-free-loop", set_attaching(cyclic_group(2), "*", "*", [], ["t"], {})),
        ("Z2-extra-loop", set_attaching(cyclic_group(2), "*", "*", ["a"], ["a", "b"], {"a": "r1"})),
        ("E2-two-more", set_attaching(indiscrete(["a", "b"]), "a", "b", ["s"], ["s", "t", "u"], {"s": "ab"})),
        ("parallel-pair-third", set_attaching(category("parallel-pair"), "a", "b", ["p", "q"], ["p", "q", "r"],
                                        {"p": "f", "q": "g"})),
        ("discrete-three-arrows", set_attaching(poset_category(["a", "b"], []), "a", "b", [], ["t1", "t2", "t3"], {})),
        ("idempotent-loop", set_attaching(_idempotent(), "*", "*", ["s"], ["s", "t"], {"s": "e"})),
        ("chain-back", set_attaching(chain(2), "2", "0", [], ["t"], {})),
        ("horn-in-simplex", _horn_in_simplex()),
    ]


def retraction_instances() -> list[tuple[str, Attaching, ValueMap]]:
    """Set-valued attaching data together with a retraction ``r: T -> S``."""
    out = []
    choices = {
        "parallel-to-arrow": {"s": "s", "t": "s"},
        "Z2-extra-loop": {"a": "a", "b": "a"},
        "E2-two-more": {"s": "s", "t": "s", "u": "s"},
        "parallel-pair-third": {"p": "p", "q": "q", "r": "q"},
        "idempotent-loop": {"s": "s", "t": "s"},
    }
    for name, data in pushout_instances():
        if name in choices:
            r = ValueMap.from_function(data.T, data.S, lambda n, t, m=choices[name]: m[t])
            out.append((name, data, r))
    return out


def localization_instances() -> list[tuple[str, FinCategory, str]]:
    return [
        ("walking-arrow", category("walking-arrow"), "f"),
        ("parallel-pair", category("parallel-pair"), "f"),
        ("[2]", chain(2), "01"),
        ("span", category("span"), "ab"),
        ("idempotent", _idempotent(), "e"),
        ("cospan", category("cospan"), "ac"),
    ]


def localization_targets() -> list[tuple[str, FinCategory]]:
    return [(name, C) for name, C in corpus_categories() if len(C.objects) <= 3 and len(C.morphisms) <= 9]
