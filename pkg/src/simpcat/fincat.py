"""Ordinary finite categories as full tables or as presentations.

:class:`FinCategory` stores every morphism and the whole composition
table.  :class:`PresentedCategory` stores a quiver, relations between
paths and a set of edges granted formal inverses; its hom-sets may be
infinite, and conversion to a table succeeds only when it can be certified.

Letter codes in presentations: edge ``e`` is ``2e`` and its formal inverse
(when granted) is ``2e + 1``.  Paths are ``(src, tgt, letters)`` in path
order.  Ties between words are broken by shortlex on these codes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import BudgetExceeded, InputError, Undecided
from .rewriting import (CongruenceClosure, RewritingSystem, concat, irreducible_is_finite,
                        irreducible_paths, knuth_bendix, shortlex)
from .simpset import SSet, Simplex, spine_names

__all__ = [
    "FinCategory",
    "Quiver",
    "PresentedCategory",
    "CatFunctor",
    "Localization",
    "UniversalReport",
    "nerve",
    "chain_simplex",
    "fundamental_category",
    "iso_core",
    "is_groupoid",
    "free_category",
    "localize",
    "check_localization_universal",
    "enumerate_functors",
    "find_isomorphism",
    "identity_functor",
    "terminal_category",
]


# ---------------------------------------------------------------------------
# tables


@dataclass(frozen=True, eq=False)
class FinCategory:
    """``morphisms[m] = (name, src, tgt)``; ``comp[(g, f)] = g o f`` (f applied first)."""

    objects: tuple[str, ...]
    morphisms: tuple[tuple[str, int, int], ...]
    identities: tuple[int, ...]
    comp: dict[tuple[int, int], int]
    _cache: dict = field(default_factory=dict, repr=False)

    def __eq__(self, other):
        if not isinstance(other, FinCategory):
            return NotImplemented
        return (self.objects, self.morphisms, self.identities, self.comp) == (
            other.objects, other.morphisms, other.identities, other.comp)

    __hash__ = None

    # -- construction -------------------------------------------------------

    @classmethod
    def from_table(cls, objects: Sequence[str], homs: Sequence[tuple[str, str, Sequence[str]]],
                   compose: Iterable[Sequence[str]], ids: Sequence[str] | dict) -> "FinCategory":
        """Build from names.  ``homs`` rows are ``(a, b, [names])``, ``compose`` rows ``(g, f, gf)``."""
        objects = tuple(objects)
        obj_index = {o: k for k, o in enumerate(objects)}
        if len(obj_index) != len(objects):
            raise InputError("objects: duplicate object name")
        morphisms = []
        mor_index: dict[str, int] = {}
        for row in homs:
            a, b, names = row
            if a not in obj_index or b not in obj_index:
                raise InputError(f"homs: unknown object in pair ({a}, {b})")
            for name in names:
                if name in mor_index:
                    raise InputError(f"homs: morphism name '{name}' used twice")
                mor_index[name] = len(morphisms)
                morphisms.append((name, obj_index[a], obj_index[b]))
        if isinstance(ids, dict):
            ids = [ids[o] for o in objects]
        if len(ids) != len(objects):
            raise InputError(f"ids: expected {len(objects)} identities, got {len(ids)}")
        identities = []
        for o, name in zip(objects, ids):
            if name not in mor_index:
                raise InputError(f"ids: identity '{name}' of '{o}' is not a morphism")
            identities.append(mor_index[name])
        comp = {}
        for row in compose:
            if len(row) != 3:
                raise InputError(f"compose: malformed entry {list(row)!r}")
            g, f, gf = row
            for name in (g, f, gf):
                if name not in mor_index:
                    raise InputError(f"compose: unknown morphism '{name}' in entry {list(row)!r}")
            comp[mor_index[g], mor_index[f]] = mor_index[gf]
        cat = cls(objects, tuple(morphisms), tuple(identities), comp)
        for f in range(len(morphisms)):
            for g in cat.out_of(morphisms[f][2]):
                if (g, f) not in comp:
                    raise InputError(
                        f"compose: missing entry for pair ({morphisms[g][0]}, {morphisms[f][0]})")
        return cat

    @classmethod
    def from_function(cls, objects: Sequence[str], morphisms: Sequence[tuple[str, int, int]],
                      identities: Sequence[int], compose) -> "FinCategory":
        """Fill the table by calling ``compose(g, f)`` on every composable pair."""
        comp = {}
        for f, (_, _, b) in enumerate(morphisms):
            for g, (_, c, _) in enumerate(morphisms):
                if c == b:
                    comp[g, f] = compose(g, f)
        return cls(tuple(objects), tuple(morphisms), tuple(identities), comp)

    # -- queries ------------------------------------------------------------

    def obj(self, name: str) -> int:
        try:
            return self.objects.index(name)
        except ValueError:
            raise InputError(f"unknown object '{name}'") from None

    def mor(self, name: str) -> int:
        idx = self._cache.get("mor_index")
        if idx is None:
            idx = self._cache["mor_index"] = {m[0]: k for k, m in enumerate(self.morphisms)}
        if name not in idx:
            raise InputError(f"unknown morphism '{name}'")
        return idx[name]

    def name(self, m: int) -> str:
        return self.morphisms[m][0]

    def src(self, m: int) -> int:
        return self.morphisms[m][1]

    def tgt(self, m: int) -> int:
        return self.morphisms[m][2]

    def hom(self, a: int, b: int) -> list[int]:
        table = self._cache.get("homs")
        if table is None:
            table = {}
            for m, (_, s, t) in enumerate(self.morphisms):
                table.setdefault((s, t), []).append(m)
            self._cache["homs"] = table
        return list(table.get((a, b), []))

    def out_of(self, a: int) -> list[int]:
        return [m for m, (_, s, _) in enumerate(self.morphisms) if s == a]

    def compose(self, g: int, f: int) -> int:
        """``g o f``."""
        return self.comp[g, f]

    def is_identity(self, m: int) -> bool:
        return self.identities[self.src(m)] == m

    def non_identities(self) -> list[int]:
        return [m for m in range(len(self.morphisms)) if not self.is_identity(m)]

    def inverse(self, m: int) -> int | None:
        a, b = self.src(m), self.tgt(m)
        for n in self.hom(b, a):
            if self.comp[n, m] == self.identities[a] and self.comp[m, n] == self.identities[b]:
                return n
        return None

    def is_invertible(self, m: int) -> bool:
        return self.inverse(m) is not None

    def homs_table(self) -> list[tuple[str, str, list[str]]]:
        rows = []
        for a in range(len(self.objects)):
            for b in range(len(self.objects)):
                ms = self.hom(a, b)
                if ms:
                    rows.append((self.objects[a], self.objects[b], [self.name(m) for m in ms]))
        return rows

    def validate(self) -> list[str]:
        problems = []
        n_obj, n_mor = len(self.objects), len(self.morphisms)
        names = [m[0] for m in self.morphisms]
        if len(set(names)) != len(names):
            problems.append("morphism names are not unique")
        for m, (name, s, t) in enumerate(self.morphisms):
            if not (0 <= s < n_obj and 0 <= t < n_obj):
                problems.append(f"morphism '{name}' has endpoints out of range")
        if problems:
            return problems
        for a, i in enumerate(self.identities):
            if not (0 <= i < n_mor) or self.src(i) != a or self.tgt(i) != a:
                problems.append(f"identity of '{self.objects[a]}' is not an endomorphism of it")
        if problems:
            return problems
        for f in range(n_mor):
            for g in self.out_of(self.tgt(f)):
                gf = self.comp.get((g, f))
                if gf is None:
                    problems.append(f"compose: missing pair ({self.name(g)}, {self.name(f)})")
                elif self.src(gf) != self.src(f) or self.tgt(gf) != self.tgt(g):
                    problems.append(f"compose: {self.name(g)} o {self.name(f)} = {self.name(gf)} has wrong type")
        if problems:
            return problems
        for f in range(n_mor):
            a, b = self.src(f), self.tgt(f)
            if self.comp[f, self.identities[a]] != f or self.comp[self.identities[b], f] != f:
                problems.append(f"unit law fails at '{self.name(f)}'")
        for f in range(n_mor):
            for g in self.out_of(self.tgt(f)):
                gf = self.comp[g, f]
                for h in self.out_of(self.tgt(g)):
                    if self.comp[h, gf] != self.comp[self.comp[h, g], f]:
                        problems.append(
                            f"associativity fails at ({self.name(h)}, {self.name(g)}, {self.name(f)})")
        return problems

    def subcategory(self, keep: Iterable[int]) -> "FinCategory":
        """Wide subcategory on ``keep`` (plus identities); must be closed under composition."""
        keep_set = set(keep) | set(self.identities)
        order = [m for m in range(len(self.morphisms)) if m in keep_set]
        new = {m: k for k, m in enumerate(order)}
        comp = {}
        for (g, f), gf in self.comp.items():
            if g in new and f in new:
                if gf not in new:
                    raise InputError(f"subcategory not closed: {self.name(g)} o {self.name(f)}")
                comp[new[g], new[f]] = new[gf]
        return FinCategory(self.objects, tuple(self.morphisms[m] for m in order),
                           tuple(new[i] for i in self.identities), comp)


def terminal_category() -> FinCategory:
    return FinCategory(("*",), (("id_*", 0, 0),), (0,), {(0, 0): 0})


def is_groupoid(C: FinCategory) -> bool:
    return all(C.is_invertible(m) for m in range(len(C.morphisms)))


def iso_core(C: FinCategory) -> FinCategory:
    """Wide subcategory of invertible morphisms."""
    return C.subcategory(m for m in range(len(C.morphisms)) if C.is_invertible(m))


# ---------------------------------------------------------------------------
# nerves


def chain_simplex(C: FinCategory, indices: Sequence[dict[tuple[int, ...], int]], start: int,
                  seq: Sequence[int]) -> Simplex:
    """The nerve simplex of a composable sequence, identities turned into degeneracies."""
    kept = tuple(m for m in seq if not C.is_identity(m))
    theta = [0]
    for m in seq:
        theta.append(theta[-1] + (0 if C.is_identity(m) else 1))
    if not kept:
        return Simplex(start, tuple(theta))
    return Simplex(indices[len(kept)][kept], tuple(theta))


def nerve(C: FinCategory, dim_cap: int) -> SSet:
    """Nerve truncated at ``dim_cap``: chains of composable non-identity morphisms."""
    nonid = C.non_identities()
    by_src: dict[int, list[int]] = {}
    for m in nonid:
        by_src.setdefault(C.src(m), []).append(m)
    layers: list[list[tuple[int, ...]]] = [[]]
    if dim_cap >= 1:
        layers.append([(m,) for m in nonid])
    for d in range(2, dim_cap + 1):
        layers.append([c + (m,) for c in layers[-1] for m in by_src.get(C.tgt(c[-1]), [])])
    for layer in layers:
        layer.sort()
    indices = [{c: k for k, c in enumerate(layer)} for layer in layers]
    names = [tuple(C.objects)]
    faces = [tuple(() for _ in C.objects)]
    for d in range(1, dim_cap + 1):
        names.append(tuple(spine_names([[C.name(m) for m in c] for c in layers[d]])))
        per = []
        for c in layers[d]:
            start = C.src(c[0])
            row = []
            for i in range(d + 1):
                if i == 0:
                    seq, s0 = c[1:], C.tgt(c[0])
                elif i == d:
                    seq, s0 = c[:-1], start
                else:
                    seq, s0 = c[:i - 1] + (C.compose(c[i], c[i - 1]),) + c[i + 1:], start
                if d == 1:
                    row.append(Simplex(s0, (0,)))
                else:
                    row.append(chain_simplex(C, indices, s0, seq))
            per.append(tuple(row))
        faces.append(tuple(per))
    return SSet(dim_cap, tuple(names), tuple(faces))


# ---------------------------------------------------------------------------
# presentations


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, int, int], ...]

    def validate(self) -> list[str]:
        problems = []
        n = len(self.vertices)
        for k, (name, s, t) in enumerate(self.edges):
            if not (0 <= s < n and 0 <= t < n):
                problems.append(f"edge {k} '{name}' has endpoints out of range")
        names = [e[0] for e in self.edges]
        if len(set(names)) != len(names):
            problems.append("edge names are not unique")
        return problems


INVERSE_SUFFIX = "^-1"


@dataclass(frozen=True, eq=False)
class PresentedCategory:
    quiver: Quiver
    relations: tuple[tuple[tuple, tuple], ...] = ()
    inverses: frozenset[int] = frozenset()
    _cache: dict = field(default_factory=dict, repr=False)

    def __eq__(self, other):
        if not isinstance(other, PresentedCategory):
            return NotImplemented
        return (self.quiver, self.relations, self.inverses) == (other.quiver, other.relations, other.inverses)

    __hash__ = None

    # -- letters ------------------------------------------------------------

    def ends(self) -> dict[int, tuple[int, int]]:
        out = {}
        for e, (_, s, t) in enumerate(self.quiver.edges):
            out[2 * e] = (s, t)
            if e in self.inverses:
                out[2 * e + 1] = (t, s)
        return out

    def letter_name(self, code: int) -> str:
        name = self.quiver.edges[code // 2][0]
        return name + INVERSE_SUFFIX if code % 2 else name

    def letter(self, name: str) -> int:
        inv = name.endswith(INVERSE_SUFFIX)
        base = name[: -len(INVERSE_SUFFIX)] if inv else name
        for e, edge in enumerate(self.quiver.edges):
            if edge[0] == base:
                if inv and e not in self.inverses:
                    raise InputError(f"letter '{name}': edge '{base}' has no formal inverse")
                return 2 * e + (1 if inv else 0)
        raise InputError(f"unknown letter '{name}'")

    def path(self, src: int | str, letters: Sequence[str | int]) -> tuple:
        """A path from its start vertex and letters (names or codes); checks typing."""
        if isinstance(src, str):
            src = self.quiver.vertices.index(src)
        codes = tuple(self.letter(l) if isinstance(l, str) else l for l in letters)
        ends = self.ends()
        at = src
        for c in codes:
            if c not in ends or ends[c][0] != at:
                raise InputError(f"path from '{self.quiver.vertices[src]}' is not composable at letter {c}")
            at = ends[c][1]
        return (src, at, codes)

    def path_name(self, path: tuple) -> str:
        if not path[2]:
            return "id_" + self.quiver.vertices[path[0]]
        return ";".join(self.letter_name(c) for c in path[2])

    def equations(self) -> list[tuple[tuple, tuple]]:
        """Stated relations plus the two cancellation laws for each inverted edge."""
        out = list(self.relations)
        for e in sorted(self.inverses):
            _, s, t = self.quiver.edges[e]
            out.append(((s, s, (2 * e, 2 * e + 1)), (s, s, ())))
            out.append(((t, t, (2 * e + 1, 2 * e)), (t, t, ())))
        return out

    def validate(self) -> list[str]:
        problems = self.quiver.validate()
        if problems:
            return problems
        for e in self.inverses:
            if not (0 <= e < len(self.quiver.edges)):
                problems.append(f"inverses: edge {e} out of range")
        ends = self.ends()
        for k, (u, v) in enumerate(self.relations):
            for side, p in (("left", u), ("right", v)):
                at = p[0]
                for c in p[2]:
                    if c not in ends or ends[c][0] != at:
                        problems.append(f"relation {k} {side} word is not a composable path")
                        break
                    at = ends[c][1]
                else:
                    if at != p[1]:
                        problems.append(f"relation {k} {side} word ends at the wrong vertex")
            if (u[0], u[1]) != (v[0], v[1]):
                problems.append(f"relation {k} relates words with different endpoints")
        return problems

    # -- word problem -------------------------------------------------------

    def closure(self, len_cap: int, budget: int = 500_000) -> CongruenceClosure:
        key = ("closure", len_cap)
        hit = self._cache.get(key)
        if hit is None:
            hit = self._cache[key] = CongruenceClosure(
                len(self.quiver.vertices), self.ends(), self.equations(), len_cap, budget)
        return hit

    def rewriting(self, max_rules: int = 200, max_steps: int = 20_000) -> RewritingSystem:
        key = ("rewriting", max_rules, max_steps)
        hit = self._cache.get(key)
        if hit is None:
            hit = self._cache[key] = knuth_bendix(
                ((u[2], v[2]) for u, v in self.equations()), max_rules, max_steps)
        return hit

    def normalize(self, path: tuple) -> tuple:
        """Rewriting normal form (requires completion to succeed)."""
        return (path[0], path[1], self.rewriting().normalize(path[2]))

    def normal_forms(self, a: int, b: int, len_cap: int) -> list[tuple]:
        """Normal-form paths ``a -> b`` of length at most ``len_cap``, shortlex order.

        Uses completed rewriting when it succeeds, otherwise the capped closure.
        """
        try:
            system = self.rewriting()
        except BudgetExceeded:
            return [p for p in self.closure(len_cap).classes(a, b)]
        ends = self.ends()
        return [p for p in irreducible_paths(system, ends, a, len_cap) if p[1] == b]

    def to_fincategory(self, len_cap: int = 8, method: str = "auto") -> "FinCategory":
        """Certified table of the presented category, or :class:`Undecided`."""
        if method not in ("auto", "rewriting", "closure"):
            raise InputError(f"unknown method {method!r}")
        if method in ("auto", "rewriting"):
            try:
                system = self.rewriting()
                ends = self.ends()
                n = len(self.quiver.vertices)
                if irreducible_is_finite(system, ends, n, len_cap):
                    return self._table_from(lambda p: (p[0], p[1], system.normalize(p[2])),
                                            [p for a in range(n) for p in irreducible_paths(system, ends, a, len_cap)])
                if method == "rewriting":
                    raise Undecided(f"normal forms do not stop below len-cap {len_cap}")
            except BudgetExceeded:
                if method == "rewriting":
                    raise
        return self._table_by_closure(len_cap)

    def _table_by_closure(self, len_cap: int) -> "FinCategory":
        cc = self.closure(len_cap)
        n = len(self.quiver.vertices)
        reps = [p for a in range(n) for b in range(n) for p in cc.classes(a, b)]
        longest = max((len(p[2]) for p in reps if len(p[2]) < len_cap), default=0)
        if len_cap < 2 * longest + 1:
            raise Undecided(f"len-cap {len_cap} too small to certify representatives of length {longest}")
        short = [p for p in reps if len(p[2]) <= longest]
        # every path of length longest+1 must fall back to a shorter path
        for p in cc.paths:
            if len(p[2]) == longest + 1 and len(cc.rep(p)[2]) > longest:
                raise Undecided(f"hom-sets not shown finite below len-cap {len_cap}")
        return self._table_from(lambda p: cc.rep(p), short)

    def _table_from(self, classify, reps: list[tuple]) -> "FinCategory":
        reps = sorted(reps, key=lambda p: (p[0], p[1], shortlex(p[2])))
        index = {p: k for k, p in enumerate(reps)}
        morphisms = tuple((self.path_name(p), p[0], p[1]) for p in reps)
        identities = tuple(index[(a, a, ())] for a in range(len(self.quiver.vertices)))
        comp = {}
        for f in reps:
            for g in reps:
                if g[0] == f[1]:
                    r = classify(concat(f, g))
                    if r is None or r not in index:
                        raise Undecided(f"composite {self.path_name(g)} o {self.path_name(f)} not classified")
                    comp[index[g], index[f]] = index[r]
        cat = FinCategory(self.quiver.vertices, morphisms, identities, comp)
        problems = cat.validate()
        if problems:
            raise Undecided("word table is not a category: " + problems[0])

        ends = self.ends()
        letter_morphism = {c: index.get(classify((s, t, (c,)))) for c, (s, t) in ends.items()}
        if None in letter_morphism.values():
            raise Undecided("a generator is not classified")

        def evaluate(path):
            m = identities[path[0]]
            for c in path[2]:
                m = comp[letter_morphism[c], m]
            return m

        for u, v in self.equations():
            if evaluate(u) != evaluate(v):
                raise Undecided("word table does not satisfy every relation")
        return cat


def free_category(Q: Quiver, groupoid: bool = False) -> PresentedCategory:
    """Free category (or free groupoid) on ``Q``: no relations beyond cancellation."""
    problems = Q.validate()
    if problems:
        raise InputError(problems[0])
    inverses = frozenset(range(len(Q.edges))) if groupoid else frozenset()
    return PresentedCategory(Q, (), inverses)


def fundamental_category(X: SSet) -> PresentedCategory:
    """Generators the nondegenerate edges; one relation ``d1 = d0 o d2`` per 2-simplex."""
    if X.max_dim < 2:
        raise InputError(f"fundamental category needs truncation >= 2, got {X.max_dim}")
    edges = tuple((X.names[1][k], fs[1].cell, fs[0].cell) for k, fs in enumerate(X.faces[1]))
    Q = Quiver(tuple(X.names[0]), edges)

    def as_path(y: Simplex) -> tuple:
        if y.degenerate:
            v = y.cell
            return (v, v, ())
        _, s, t = edges[y.cell]
        return (s, t, (2 * y.cell,))

    relations = []
    for fs in X.faces[2]:
        d0, d1, d2 = (as_path(y) for y in fs)
        relations.append((concat(d2, d0), d1))
    return PresentedCategory(Q, tuple(relations), frozenset())


# ---------------------------------------------------------------------------
# functors


@dataclass(frozen=True)
class CatFunctor:
    """``mor_map[m]`` is a morphism index (table target) or a path (presented target)."""

    source: FinCategory
    target: object
    obj_map: tuple[int, ...]
    mor_map: tuple

    def validate(self, len_cap: int = 6) -> list[str]:
        C, D = self.source, self.target
        problems = []
        if isinstance(D, FinCategory):
            for m, (name, s, t) in enumerate(C.morphisms):
                fm = self.mor_map[m]
                if D.src(fm) != self.obj_map[s] or D.tgt(fm) != self.obj_map[t]:
                    problems.append(f"'{name}' sent to a morphism with the wrong endpoints")
            for a, i in enumerate(C.identities):
                if self.mor_map[i] != D.identities[self.obj_map[a]]:
                    problems.append(f"identity of '{C.objects[a]}' not preserved")
            for (g, f), gf in C.comp.items():
                if D.compose(self.mor_map[g], self.mor_map[f]) != self.mor_map[gf]:
                    problems.append(f"composition {C.name(g)} o {C.name(f)} not preserved")
            return problems
        cc = D.closure(len_cap)
        for m, (name, s, t) in enumerate(C.morphisms):
            p = self.mor_map[m]
            if (p[0], p[1]) != (self.obj_map[s], self.obj_map[t]):
                problems.append(f"'{name}' sent to a path with the wrong endpoints")
        for (g, f), gf in C.comp.items():
            if not cc.same(concat(self.mor_map[f], self.mor_map[g]), self.mor_map[gf]):
                problems.append(f"composition {C.name(g)} o {C.name(f)} not preserved up to len-cap {len_cap}")
        return problems


def identity_functor(C: FinCategory) -> CatFunctor:
    return CatFunctor(C, C, tuple(range(len(C.objects))), tuple(range(len(C.morphisms))))


def enumerate_functors(C: FinCategory, D: FinCategory, budget: int = 1_000_000,
                       bijective: bool = False, obj_map: Sequence[int] | None = None):
    """Yield every functor ``C -> D`` (or every isomorphism when ``bijective``).

    Morphisms are assigned in index order; a composite is forced once both
    factors are known, which prunes most of the search.
    """
    nC, nD = len(C.objects), len(D.objects)
    if bijective and (nC != nD or len(C.morphisms) != len(D.morphisms)):
        return
    order = C.non_identities()
    visited = 0

    def obj_maps():
        if obj_map is not None:
            yield tuple(obj_map)
        elif bijective:
            yield from itertools.permutations(range(nD))
        else:
            yield from itertools.product(range(nD), repeat=nC)

    pairs_by = {m: [] for m in range(len(C.morphisms))}
    for (g, f), gf in C.comp.items():
        pairs_by[g].append((g, f, gf))
        pairs_by[f].append((g, f, gf))
        pairs_by[gf].append((g, f, gf))

    for omap in obj_maps():
        if bijective and any(len(C.hom(a, b)) != len(D.hom(omap[a], omap[b]))
                             for a in range(nC) for b in range(nC)):
            continue
        image: dict[int, int] = {C.identities[a]: D.identities[omap[a]] for a in range(nC)}
        used: set[int] = set(image.values())

        def consistent(m: int) -> bool:
            for g, f, gf in pairs_by[m]:
                if g in image and f in image and gf in image:
                    if D.compose(image[g], image[f]) != image[gf]:
                        return False
            return True

        def extend(p: int):
            nonlocal visited
            visited += 1
            if visited > budget:
                raise BudgetExceeded(f"functor enumeration exceeded budget {budget}")
            if p == len(order):
                yield CatFunctor(C, D, tuple(omap), tuple(image[m] for m in range(len(C.morphisms))))
                return
            m = order[p]
            for cand in D.hom(omap[C.src(m)], omap[C.tgt(m)]):
                if bijective and cand in used:
                    continue
                image[m] = cand
                used.add(cand)
                if consistent(m):
                    yield from extend(p + 1)
                used.discard(cand)
                del image[m]

        yield from extend(0)


def find_isomorphism(C: FinCategory, D: FinCategory) -> CatFunctor | None:
    for F in enumerate_functors(C, D, bijective=True):
        return F
    return None


# ---------------------------------------------------------------------------
# localization


@dataclass(frozen=True)
class Localization:
    category: PresentedCategory
    map: CatFunctor
    inverted: tuple[int, ...]


def localize(C: FinCategory, S: Iterable[int | str]) -> Localization:
    """Presentation of ``C[S^-1]``: non-identity morphisms as edges, the table as relations."""
    S = [C.mor(s) if isinstance(s, str) else s for s in S]
    for s in S:
        if not (0 <= s < len(C.morphisms)):
            raise InputError(f"S: morphism {s} out of range")
    nonid = C.non_identities()
    edge_of = {m: k for k, m in enumerate(nonid)}
    Q = Quiver(C.objects, tuple(C.morphisms[m] for m in nonid))

    def as_path(m: int) -> tuple:
        if C.is_identity(m):
            return (C.src(m), C.src(m), ())
        return (C.src(m), C.tgt(m), (2 * edge_of[m],))

    relations = []
    for (g, f), gf in sorted(C.comp.items(), key=lambda kv: (kv[0][1], kv[0][0])):
        if C.is_identity(g) or C.is_identity(f):
            continue
        relations.append((concat(as_path(f), as_path(g)), as_path(gf)))
    inverted = tuple(sorted({s for s in S if not C.is_identity(s)}))
    P = PresentedCategory(Q, tuple(relations), frozenset(edge_of[s] for s in inverted))
    F = CatFunctor(C, P, tuple(range(len(C.objects))), tuple(as_path(m) for m in range(len(C.morphisms))))
    return Localization(P, F, inverted)


@dataclass(frozen=True)
class UniversalReport:
    verdict: bool
    functors_checked: int
    factorizations_per_functor: tuple[tuple[tuple[int, ...], int], ...]

    @property
    def witness(self):
        for images, count in self.factorizations_per_functor:
            if count != 1:
                return images, count
        return None


def _eval_path(D: FinCategory, letter_image: dict[int, int], start_obj: int, path: tuple) -> int:
    m = D.identities[start_obj]
    for c in path[2]:
        m = D.compose(letter_image[c], m)
    return m


def check_localization_universal(C: FinCategory, S: Iterable[int | str], D: FinCategory,
                                 budget: int = 1_000_000) -> UniversalReport:
    """Count factorizations of every ``S``-inverting ``F: C -> D`` through ``C[S^-1]``."""
    loc = localize(C, S)
    P = loc.category
    nonid = C.non_identities()
    equations = P.equations()
    rows = []
    checked = 0
    for F in enumerate_functors(C, D, budget=budget):
        if not all(D.is_invertible(F.mor_map[s]) for s in loc.inverted):
            continue
        checked += 1
        base = {2 * k: F.mor_map[m] for k, m in enumerate(nonid)}
        inv_edges = sorted(P.inverses)
        count = 0
        for choice in itertools.product(*[
                D.hom(F.obj_map[C.tgt(nonid[e])], F.obj_map[C.src(nonid[e])]) for e in inv_edges]):
            images = dict(base)
            for e, d in zip(inv_edges, choice):
                images[2 * e + 1] = d
            if all(_eval_path(D, images, F.obj_map[u[0]], u) == _eval_path(D, images, F.obj_map[v[0]], v)
                   for u, v in equations):
                # precomposition with the localization map must give back F
                if all(_eval_path(D, images, F.obj_map[C.src(m)], loc.map.mor_map[m]) == F.mor_map[m]
                       for m in range(len(C.morphisms))):
                    count += 1
        rows.append((F.mor_map, count))
    return UniversalReport(all(c == 1 for _, c in rows), checked, tuple(rows))
