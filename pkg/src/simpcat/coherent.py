"""Thickened simplices, the coherent nerve, homotopy categories and groupoid cores.

The thickened ``n``-simplex has objects ``0..n``; its mapping value from
``i`` to ``j`` is the nerve of the subsets of ``[i, j]`` containing both
ends, ordered by inclusion, and composition takes unions.  A subset is a
sorted tuple of integers throughout.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Hashable, Iterator

from scipy.cluster.hierarchy import DisjointSet

from .enriched.homotopy import groupoid_core
from .enriched.value import Value, chain_value, label_name
from .enriched.vcat import VCategory
from .errors import BudgetExceeded, InputError, TruncationError
from .fincat import FinCategory, Quiver, enumerate_functors, free_category
from .simpset import (Poset, Simplex, SimplicialMap, SSet, degeneracy_map, face_map,
                      is_quasicategory_up_to, nerve_of_poset, spine_names)

__all__ = ["subsets_between", "xi_mapping_space", "xi_category", "coherent_nerve", "CoherentSimplex",
           "HoCategory", "homotopy_category", "quasigroupoid_core", "k_shriek_nerve", "k_shriek_inclusion",
           "point_mapping_space", "subcomplex"]


def subsets_between(i: int, j: int) -> list[tuple[int, ...]]:
    """Subsets of ``[i, j]`` containing ``i`` and ``j``, by size then lexicographically."""
    if i > j:
        return []
    if i == j:
        return [(i,)]
    inner = range(i + 1, j)
    out = [(i,) + c + (j,) for r in range(j - i) for c in itertools.combinations(inner, r)]
    return sorted(out, key=lambda s: (len(s), s))


def _subset_name(s: tuple[int, ...]) -> str:
    return "".join(map(str, s)) if s[-1] < 10 else ",".join(map(str, s))


def xi_mapping_space(n: int, i: int, j: int) -> SSet:
    """Nerve of the inclusion order on subsets of ``[i, j]`` containing both ends."""
    if not (0 <= i <= n and 0 <= j <= n):
        raise InputError(f"object indices must lie in 0..{n}, got ({i}, {j})")
    if i > j:
        return SSet(0, ((),), ((),))
    elems = subsets_between(i, j)
    leq = [(a, b) for a, A in enumerate(elems) for b, B in enumerate(elems) if set(A) <= set(B)]
    return nerve_of_poset(Poset.from_relation([_subset_name(s) for s in elems], leq), max(j - i - 1, 0))


def _union_chain(g, f):
    return tuple(tuple(sorted(set(I) | set(J))) for I, J in zip(g, f))


def xi_category(n: int, dim: int | None = None) -> VCategory:
    """The thickened simplex as a simplicially enriched category, levels up to ``dim``."""
    if n < 0:
        raise InputError("n must be non-negative")
    dim = max(n - 1, 0) if dim is None else dim
    homs = {}
    for i in range(n + 1):
        for j in range(n + 1):
            homs[i, j] = Value.empty() if i > j else chain_value(
                subsets_between(i, j), lambda A, B: set(A) <= set(B), dim)
    ids = tuple(((i,),) for i in range(n + 1))
    return VCategory.from_function([str(i) for i in range(n + 1)], homs, ids,
                                   lambda a, b, c, lvl, g, f: _union_chain(g, f), dim)


# ---------------------------------------------------------------------------
# coherent nerve


def _strict_chains(i: int, j: int) -> list[tuple[tuple[int, ...], ...]]:
    """Strictly increasing chains of subsets between ``i`` and ``j``, longest first."""
    elems = subsets_between(i, j)
    out = []
    for k in range(len(elems), 0, -1):
        for combo in itertools.combinations(elems, k):
            if all(set(a) < set(b) for a, b in zip(combo, combo[1:])):
                out.append(combo)
    return out


def _collapse(chain):
    """A weakly increasing chain as (strict chain, monotone surjection onto it)."""
    strict, alpha = [], []
    for s in chain:
        if not strict or strict[-1] != s:
            strict.append(s)
        alpha.append(len(strict) - 1)
    return tuple(strict), tuple(alpha)


@dataclass(frozen=True)
class CoherentSimplex:
    """An enriched functor from the thickened ``n``-simplex.

    ``images[(i, j)]`` lists the images of the strict chains between ``i``
    and ``j`` in the order of ``_strict_chains``.
    """

    objects: tuple[int, ...]
    images: tuple[tuple[Hashable, ...], ...]

    @property
    def n(self) -> int:
        return len(self.objects) - 1


class _Nerve:
    def __init__(self, C: VCategory, budget: int):
        self.C = C
        self.budget = budget
        self.steps = 0
        self.chains: dict[tuple[int, int], list] = {}
        self.chain_pos: dict[tuple[int, int], dict] = {}

    def chains_of(self, i, j):
        key = (i, j)
        if key not in self.chains:
            self.chains[key] = _strict_chains(i, j)
            self.chain_pos[key] = {c: k for k, c in enumerate(self.chains[key])}
        return self.chains[key]

    @staticmethod
    def pairs(n):
        return [(i, i + s) for s in range(1, n + 1) for i in range(n + 1 - s)]

    def evaluate(self, objs, table, i, j, chain):
        """Image of a weakly increasing chain between ``i`` and ``j`` at level ``len(chain) - 1``."""
        level = len(chain) - 1
        if i == j:
            return self.C.identity(objs[i], level)
        strict, alpha = _collapse(chain)
        self.chains_of(i, j)
        x = table[i, j][self.chain_pos[i, j][strict]]
        return self.C.homs[objs[i], objs[j]].apply(len(strict) - 1, x, alpha)

    def tick(self):
        self.steps += 1
        if self.steps > self.budget:
            raise BudgetExceeded(f"coherent nerve enumeration exceeded budget {self.budget}")

    def solve_pair(self, objs, table, i, j) -> Iterator[tuple]:
        C = self.C
        V = C.homs[objs[i], objs[j]]
        chains = self.chains_of(i, j)
        top = len(chains[0]) - 1
        if not V.discrete and V.dim < top:
            raise TruncationError(f"mapping value ({C.objects[objs[i]]}, {C.objects[objs[j]]}) is "
                                  f"truncated at {V.dim}, dimension {top} needed")
        assigned: dict = {}
        for chain in chains:
            if len(chain[0]) == 2:
                continue
            val = None
            m = len(chain) - 1
            for k in chain[0][1:-1]:
                upper = tuple(tuple(v for v in s if v >= k) for s in chain)
                lower = tuple(tuple(v for v in s if v <= k) for s in chain)
                got = C.compose(objs[i], objs[k], objs[j], m,
                                self.evaluate(objs, table, k, j, upper),
                                self.evaluate(objs, table, i, k, lower))
                if val is None:
                    val = got
                elif val != got:
                    return
            assigned[chain] = val
        free = [c for c in chains if len(c[0]) == 2]

        def assign(cur, chain, x):
            """Set ``chain -> x`` and propagate to faces; ``None`` on conflict."""
            old = cur.get(chain)
            if old is not None:
                return cur if old == x else None
            cur = dict(cur)
            cur[chain] = x
            m = len(chain) - 1
            if m:
                for t in range(m + 1):
                    cur = assign(cur, chain[:t] + chain[t + 1:], V.face(m, x, t))
                    if cur is None:
                        return None
            return cur

        # forced chains must be face-consistent among themselves
        start: dict | None = {}
        for chain, x in assigned.items():
            start = assign(start, chain, x)
            if start is None:
                return

        def search(k, cur):
            self.tick()
            if k == len(free):
                yield tuple(cur[c] for c in chains)
                return
            chain = free[k]
            if chain in cur:
                yield from search(k + 1, cur)
                return
            for x in V.level(len(chain) - 1):
                nxt = assign(cur, chain, x)
                if nxt is not None:
                    yield from search(k + 1, nxt)

        yield from search(0, start)

    def functors(self, n: int) -> list[CoherentSimplex]:
        C = self.C
        N = len(C.objects)
        pairs = self.pairs(n)
        out = []
        for objs in itertools.product(range(N), repeat=n + 1):
            if any(C.homs[objs[i], objs[j]].is_empty() for i, j in pairs):
                continue

            def rec(p, table):
                if p == len(pairs):
                    out.append(CoherentSimplex(objs, tuple(table[q] for q in pairs)))
                    return
                i, j = pairs[p]
                for sol in self.solve_pair(objs, table, i, j):
                    table[i, j] = sol
                    rec(p + 1, table)
                    del table[i, j]

            rec(0, {})
        return out

    def table(self, x: CoherentSimplex) -> dict:
        return dict(zip(self.pairs(x.n), x.images))

    def precompose(self, x: CoherentSimplex, theta: tuple[int, ...]) -> CoherentSimplex:
        """``x`` restricted along the functor induced by a monotone ``theta: [m] -> [n]``."""
        table = self.table(x)
        m = len(theta) - 1
        objs = tuple(x.objects[t] for t in theta)
        images = []
        for i, j in self.pairs(m):
            row = []
            for chain in self.chains_of(i, j):
                moved = tuple(tuple(sorted({theta[v] for v in s})) for s in chain)
                row.append(self.evaluate(x.objects, table, theta[i], theta[j], moved))
            images.append(tuple(row))
        return CoherentSimplex(objs, tuple(images))


def coherent_nerve(C: VCategory, n_max: int = 3, budget: int = 1_000_000) -> SSet:
    """Enriched functors from thickened simplices into ``C``, through dimension ``n_max``.

    Cells are named by their spine (the images of the one-step mapping
    values) joined with ``;``, with a ``[k]`` suffix when several cells
    print alike (see :func:`spine_names`).
    """
    if not 0 <= n_max <= 3:
        raise InputError("n_max must lie in 0..3")
    engine = _Nerve(C, budget)
    levels = [engine.functors(n) for n in range(n_max + 1)]
    members = [set(l) for l in levels]
    faces: list[dict] = [{}]
    degens: list[dict] = []
    for n in range(n_max + 1):
        if n:
            table = {}
            for x in levels[n]:
                fs = tuple(engine.precompose(x, face_map(n, t)) for t in range(n + 1))
                if any(f not in members[n - 1] for f in fs):
                    raise InputError("coherent nerve: a face left the enumerated functors")
                table[x] = fs
            faces.append(table)
        if n < n_max:
            table = {}
            for x in levels[n]:
                ds = tuple(engine.precompose(x, degeneracy_map(n, t)) for t in range(n + 1))
                if any(d not in members[n + 1] for d in ds):
                    raise InputError("coherent nerve: a degeneracy left the enumerated functors")
                table[x] = ds
            degens.append(table)
        else:
            degens.append({})
    V = Value(n_max, tuple(tuple(l) for l in levels), tuple(faces), tuple(degens), False)
    # the one-step pairs come first in the image tuple
    names = _cell_names(V, lambda x: C.objects[x.objects[0]],
                        lambda n, x: [label_name(x.images[k][0]) for k in range(n)])
    return V.to_sset(n_max, names.__getitem__)


def _cell_names(V: Value, vertex_name, spine) -> dict:
    """Names for the nondegenerate elements: vertices by ``vertex_name``, higher cells by their spine."""
    names = {}
    for n in range(V.dim + 1):
        layer = V.nondegenerate(n)
        if n == 0:
            names.update((x, vertex_name(x)) for x in layer)
        else:
            names.update(zip(layer, spine_names([spine(n, x) for x in layer])))
    return names


# ---------------------------------------------------------------------------
# homotopy category and cores


@dataclass(frozen=True, eq=False)
class HoCategory:
    """Objects are vertices; ``edge_class[e]`` is the morphism index of a 1-simplex ``e``."""

    category: FinCategory
    edge_class: dict
    relation_is_equivalence: bool


def homotopy_category(X: SSet, check: bool = True) -> HoCategory:
    """Edges modulo ``f ~ g`` when a 2-simplex has faces ``(s0 b, g, f)``; composition via inner fillers."""
    if X.max_dim < 2:
        raise TruncationError("the homotopy category needs 2-simplices")
    if check:
        report = is_quasicategory_up_to(X, min(3, X.max_dim))
        if not report.verdict:
            raise InputError(f"not a quasi-category: {report.first_failure.describe(X)}")
    edges = X.simplices(1)
    related = set()
    tri = X.simplices(2)
    for s in tri:
        d0, d1, d2 = (X.face(s, i) for i in range(3))
        if d0.degenerate:
            related.add((d2, d1))
    ds = DisjointSet(edges)
    for f, g in related:
        ds.merge(f, g)
    ends = {e: (X.face(e, 1).cell, X.face(e, 0).cell) for e in edges}
    equivalence = all((e, e) in related for e in edges) and all((g, f) in related for f, g in related)
    if equivalence:
        by_first: dict = {}
        for f, g in related:
            by_first.setdefault(f, []).append(g)
        equivalence = all((f, h) in related for f, g in related for h in by_first.get(g, ()))

    objects = X.names[0]
    nv = len(objects)
    classes = sorted((sorted(s) for s in ds.subsets()), key=lambda c: (ends[c[0]], c[0].degenerate, c[0]))
    morphisms, edge_class = [], {}
    identities = [None] * nv
    for c in classes:
        k = len(morphisms)
        for e in c:
            edge_class[e] = k
        a, b = ends[c[0]]
        degen = [e for e in c if e.degenerate]
        if degen:
            identities[a] = k
            morphisms.append((f"id_{objects[a]}", a, b))
        else:
            morphisms.append((X.name(c[0]), a, b))
    comp = {}
    for s in tri:
        f, g, gf = X.face(s, 2), X.face(s, 0), X.face(s, 1)
        key = (edge_class[g], edge_class[f])
        old = comp.setdefault(key, edge_class[gf])
        if old != edge_class[gf]:
            raise InputError(f"composite of ({X.name(g)}, {X.name(f)}) depends on the filler")
    for f in range(len(morphisms)):
        for g in range(len(morphisms)):
            if morphisms[f][2] == morphisms[g][1] and (g, f) not in comp:
                raise InputError(f"no filler composes ({morphisms[g][0]}, {morphisms[f][0]})")
    return HoCategory(FinCategory(tuple(objects), tuple(morphisms), tuple(identities), comp), edge_class,
                      equivalence)


def subcomplex(X: SSet, keep) -> SSet:
    """Nondegenerate cells with ``keep(d, k)``; must be closed under faces."""
    index = []
    for d in range(X.max_dim + 1):
        index.append({k: p for p, k in enumerate(k for k in range(X.count(d)) if keep(d, k))})
    names, faces = [], []
    for d in range(X.max_dim + 1):
        names.append(tuple(X.names[d][k] for k in index[d]))
        row = []
        for k in index[d]:
            fs = []
            for s in X.faces[d][k]:
                if s.cell not in index[s.base_dim]:
                    raise InputError(f"subcomplex is not closed under faces at {X.names[d][k]}")
                fs.append(Simplex(index[s.base_dim][s.cell], s.surj))
            row.append(tuple(fs))
        faces.append(tuple(row))
    return SSet(X.max_dim, tuple(names), tuple(faces))


def quasigroupoid_core(X: SSet) -> SSet:
    """The largest subcomplex whose edges all become invertible in the homotopy category."""
    ho = homotopy_category(X)
    H = ho.category
    good = {e for e, k in ho.edge_class.items() if H.is_invertible(k)}

    def keep(d, k):
        if d == 0:
            return True
        x = Simplex.nondegenerate(d, k)
        return all(X.apply(x, (a, b)) in good for a in range(d + 1) for b in range(a + 1, d + 1))

    return subcomplex(X, keep)


# ---------------------------------------------------------------------------
# k-shriek on nerves


def _indiscrete(n: int) -> FinCategory:
    Q = Quiver(tuple(str(v) for v in range(n + 1)), tuple((f"e{v}", v, v + 1) for v in range(n)))
    return free_category(Q, groupoid=True).to_fincategory()


def k_shriek_nerve(C: FinCategory, n_max: int = 3, budget: int = 1_000_000) -> SSet:
    """Functors from the free groupoid on ``0 -> 1 -> ... -> n`` into ``C``.

    A vertex is recorded as its object index and a higher cell by its spine
    ``F(i -> i + 1)``; faces and degeneracies precompose with the functors
    induced by monotone maps, evaluated through the spine.
    """
    levels = []
    for n in range(n_max + 1):
        G = _indiscrete(n)
        between = {(G.src(m), G.tgt(m)): m for m in range(len(G.morphisms))}
        layer = set()
        for F in enumerate_functors(G, C, budget=budget):
            if n == 0:
                layer.add(F.obj_map[0])
            else:
                layer.add(tuple(F.mor_map[between[v, v + 1]] for v in range(n)))
        levels.append(tuple(sorted(layer)))

    def vertex(n, x, v):
        if n == 0:
            return x
        return C.src(x[v]) if v < n else C.tgt(x[n - 1])

    def restrict(n, x, theta):
        if len(theta) == 1:
            return vertex(n, x, theta[0])
        out = []
        for a, b in zip(theta, theta[1:]):
            m = C.identities[vertex(n, x, a)]
            for t in range(a, b):
                m = C.compose(x[t], m)
            out.append(m)
        return tuple(out)

    faces, degens = [{}], []
    for n in range(n_max + 1):
        if n:
            faces.append({x: tuple(restrict(n, x, face_map(n, t)) for t in range(n + 1)) for x in levels[n]})
        degens.append({x: tuple(restrict(n, x, degeneracy_map(n, t)) for t in range(n + 1))
                       for x in levels[n]} if n < n_max else {})
    V = Value(n_max, tuple(levels), tuple(faces), tuple(degens), False)
    names = _cell_names(V, lambda x: C.objects[x], lambda n, x: [C.name(m) for m in x])
    return V.to_sset(n_max, names.__getitem__)


def k_shriek_inclusion(C: FinCategory, n_max: int = 3) -> SimplicialMap:
    """The comparison into ``nerve(C)``, matching cells by name."""
    from .fincat import nerve
    source = k_shriek_nerve(C, n_max)
    target = nerve(C, n_max)
    images = []
    for d in range(n_max + 1):
        where = {name: k for k, name in enumerate(target.names[d])}
        images.append(tuple(Simplex.nondegenerate(d, where[name]) for name in source.names[d]))
    return SimplicialMap(source, target, tuple(images))


def point_mapping_space(C: VCategory, n_max: int = 3, budget: int = 1_000_000) -> SSet:
    return coherent_nerve(groupoid_core(C), n_max, budget)
