"""Free categories on set-valued graphs and free products over a fixed object set.

Free constructions have infinite hom-sets, so they are enumerated up to a
weight cap: :class:`CappedCategory` lists every element of weight at most
``cap`` and composes without bound, reporting ``None`` when a composite
leaves the listed range.

Words are stored in path order (first-applied letter first).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Hashable, Sequence

from ..errors import InputError
from ..fincat import FinCategory
from .vcat import VGraph

__all__ = ["CappedCategory", "free_monoid", "free_vcategory", "building_block", "free_product",
           "capped_from_fincategory", "flatten_letters"]


@dataclass(frozen=True, eq=False)
class CappedCategory:
    objects: tuple[str, ...]
    homs: dict[tuple[int, int], tuple]
    identities: tuple[Hashable, ...]
    weight: Callable[[Hashable], int]
    compose_fn: Callable[[Hashable, Hashable], Hashable]
    cap: int
    ends: Callable[[Hashable], tuple[int, int]]

    def hom(self, a: int, b: int) -> tuple:
        return self.homs.get((a, b), ())

    def count(self, a: int, b: int) -> int:
        return len(self.hom(a, b))

    def total(self) -> int:
        return sum(len(v) for v in self.homs.values())

    def elements(self) -> list:
        return [x for key in sorted(self.homs) for x in self.homs[key]]

    def is_identity(self, x: Hashable) -> bool:
        a, b = self.ends(x)
        return a == b and x == self.identities[a]

    def compose(self, g: Hashable, f: Hashable) -> Hashable | None:
        """``g o f`` when it stays within the cap, else ``None``."""
        if self.ends(f)[1] != self.ends(g)[0]:
            raise InputError("compose: morphisms are not composable")
        r = self.compose_fn(g, f)
        return r if self.weight(r) <= self.cap else None

    def check_laws(self) -> list[str]:
        problems = []
        elems = self.elements()
        for f in elems:
            a, b = self.ends(f)
            if self.compose_fn(f, self.identities[a]) != f or self.compose_fn(self.identities[b], f) != f:
                problems.append(f"unit law fails at {f!r}")
        by_src: dict[int, list] = {}
        for f in elems:
            by_src.setdefault(self.ends(f)[0], []).append(f)
        for f in elems:
            for g in by_src.get(self.ends(f)[1], []):
                gf = self.compose_fn(g, f)
                for h in by_src.get(self.ends(g)[1], []):
                    if self.compose_fn(h, gf) != self.compose_fn(self.compose_fn(h, g), f):
                        problems.append(f"associativity fails at ({h!r}, {g!r}, {f!r})")
        return problems


# ---------------------------------------------------------------------------
# free monoid and free category on a graph


def free_monoid(X: Sequence[Hashable], len_cap: int) -> CappedCategory:
    """Words over ``X`` of length at most ``len_cap``; the empty word is the unit."""
    X = tuple(X)
    words = [()]
    layer = [()]
    for _ in range(len_cap):
        layer = [w + (x,) for w in layer for x in X]
        words.extend(layer)
    return CappedCategory(("*",), {(0, 0): tuple(words)}, ((),), len,
                          lambda g, f: f + g, len_cap, lambda w: (0, 0))


def _paths(objects: Sequence[str], edges: Sequence[tuple[Hashable, int, int]], len_cap: int):
    out: dict[tuple[int, int], list] = {}
    for a in range(len(objects)):
        out.setdefault((a, a), []).append((a, a, ()))
    layer = [(a, a, ()) for a in range(len(objects))]
    for _ in range(len_cap):
        layer = [(p[0], t, p[2] + ((label, s, t),)) for p in layer for label, s, t in edges if s == p[1]]
        for p in layer:
            out.setdefault((p[0], p[1]), []).append(p)
    return {k: tuple(v) for k, v in out.items()}


def _graph_edges(G: VGraph) -> list[tuple[Hashable, int, int]]:
    edges = []
    n = len(G.objects)
    for a in range(n):
        for b in range(n):
            v = G.homs[a, b]
            if not v.discrete:
                raise InputError(f"free constructions need set-valued edges; hom ({a}, {b}) is simplicial")
            edges.extend((x, a, b) for x in v.levels[0])
    return edges


def _path_category(objects, edges, len_cap) -> CappedCategory:
    homs = _paths(objects, edges, len_cap)
    ids = tuple((a, a, ()) for a in range(len(objects)))
    return CappedCategory(tuple(objects), homs, ids, lambda p: len(p[2]),
                          lambda g, f: (f[0], g[1], f[2] + g[2]), len_cap, lambda p: (p[0], p[1]))


def free_vcategory(G: VGraph, len_cap: int) -> CappedCategory:
    """Paths of edges of ``G`` up to ``len_cap``; composition is concatenation."""
    return _path_category(G.objects, _graph_edges(G), len_cap)


def building_block(G: VGraph, a: int, b: int, len_cap: int) -> CappedCategory:
    """Free category on the graph keeping only the edges of ``G`` from ``a`` to ``b``.

    Every other pair, diagonal included, carries no edges; the diagonal still
    gets identities, and when ``a == b`` the loops generate a free monoid.
    """
    edges = [e for e in _graph_edges(G) if (e[1], e[2]) == (a, b)]
    return _path_category(G.objects, edges, len_cap)


# ---------------------------------------------------------------------------
# free products


def capped_from_fincategory(C: FinCategory) -> CappedCategory:
    """A finite category as a capped one: non-identities weigh 1, nothing is cut."""
    homs = {(a, b): tuple(C.name(m) for m in C.hom(a, b))
            for a in range(len(C.objects)) for b in range(len(C.objects)) if C.hom(a, b)}
    ids = tuple(C.name(i) for i in C.identities)
    idset = set(ids)
    return CappedCategory(C.objects, homs, ids, lambda x: 0 if x in idset else 1,
                          lambda g, f: C.name(C.compose(C.mor(g), C.mor(f))), 1,
                          lambda x: (C.src(C.mor(x)), C.tgt(C.mor(x))))


def free_product(factors: Sequence[CappedCategory], len_cap: int) -> CappedCategory:
    """Alternating words in non-identity letters of the factors, total weight at most ``len_cap``.

    A letter is ``(factor, elem)``; an element is ``(src, tgt, letters)``.
    Composition concatenates and then merges neighbours from the same factor,
    dropping letters that compose to an identity.
    """
    factors = list(factors)
    if not factors:
        raise InputError("free product of no factors")
    objects = factors[0].objects
    if any(F.objects != objects for F in factors):
        raise InputError("free product: object sets differ")

    def wt(x):
        return sum(factors[k].weight(e) for k, e in x[2])

    def normalize(src, tgt, letters):
        stack: list[tuple[int, Hashable]] = []
        for k, e in letters:
            if stack and stack[-1][0] == k:
                _, top = stack.pop()
                e = factors[k].compose_fn(e, top)
            if factors[k].is_identity(e):
                continue
            stack.append((k, e))
        return (src, tgt, tuple(stack))

    def compose(g, f):
        return normalize(f[0], g[1], f[2] + g[2])

    # enumerate alternating words by weight
    letters_from: dict[int, list[tuple[int, Hashable, int]]] = {}
    for k, F in enumerate(factors):
        for (a, b), xs in F.homs.items():
            for x in xs:
                if not F.is_identity(x):
                    if F.weight(x) < 1:
                        raise InputError("free product: non-identity letters must weigh at least 1")
                    letters_from.setdefault(a, []).append((k, x, b))
    homs: dict[tuple[int, int], list] = {}
    frontier = [(a, a, (), 0) for a in range(len(objects))]
    while frontier:
        nxt = []
        for src, at, letters, w in frontier:
            homs.setdefault((src, at), []).append((src, at, letters))
            for k, x, b in letters_from.get(at, []):
                if letters and letters[-1][0] == k:
                    continue
                w2 = w + factors[k].weight(x)
                if w2 <= len_cap:
                    nxt.append((src, b, letters + ((k, x),), w2))
        frontier = nxt
    ids = tuple((a, a, ()) for a in range(len(objects)))
    return CappedCategory(objects, {k: tuple(v) for k, v in homs.items()}, ids, wt, compose, len_cap,
                          lambda x: (x[0], x[1]))


def flatten_letters(x: Hashable, nesting: dict | None = None, prefix: tuple = ()) -> tuple:
    """Expand letters of nested free products into ``(factor path, elem)`` pairs.

    ``nesting`` maps a factor index to the nesting of that factor when the
    factor is itself a free product; other factors are leaves.  Used to put
    iterated binary products in bijection with one n-ary product.
    """
    nesting = nesting or {}
    out = []
    for k, e in x[2]:
        if k in nesting:
            out.extend(flatten_letters(e, nesting[k], prefix + (k,)))
        else:
            out.append((prefix + (k,), e))
    return tuple(out)
