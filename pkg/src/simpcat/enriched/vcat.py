"""Graphs and categories enriched in finite values."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Sequence

from ..errors import InputError
from ..fincat import FinCategory
from .value import Value, ValueMap, label_name

__all__ = ["VGraph", "VCategory", "VFunctor", "u_category", "graph_tensor", "discrete_vcategory",
           "terminal_vcategory"]


@dataclass(frozen=True, eq=False)
class VGraph:
    objects: tuple[str, ...]
    homs: dict[tuple[int, int], Value]

    def hom(self, a: int, b: int) -> Value:
        return self.homs[a, b]

    def validate(self) -> list[str]:
        problems = []
        n = len(self.objects)
        for a in range(n):
            for b in range(n):
                if (a, b) not in self.homs:
                    problems.append(f"homs: missing pair ({self.objects[a]}, {self.objects[b]})")
                else:
                    problems.extend(f"hom ({self.objects[a]}, {self.objects[b]}): {p}"
                                    for p in self.homs[a, b].validate())
        return problems


def graph_tensor(G: VGraph, H: VGraph) -> VGraph:
    """``(G x_O H)(c, d) = coproduct over e of H(c, e) x G(e, d)``."""
    if G.objects != H.objects:
        raise InputError("tensor: object sets differ")
    n = len(G.objects)
    homs = {}
    for c in range(n):
        for d in range(n):
            homs[c, d] = Value.coproduct([H.homs[c, e].product(G.homs[e, d]) for e in range(n)])
    return VGraph(G.objects, homs)


@dataclass(frozen=True, eq=False)
class VCategory:
    """``comp[(a, b, c)][n][(g, f)] = g o f`` at level ``n`` (only level 0 when all homs are discrete).

    ``ids[a]`` is the identity vertex of ``hom(a, a)``; at level ``n`` the
    identity is its total degeneracy.
    """

    objects: tuple[str, ...]
    homs: dict[tuple[int, int], Value]
    comp: dict[tuple[int, int, int], tuple[dict, ...]]
    ids: tuple[Hashable, ...]
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def discrete(self) -> bool:
        return all(v.discrete for v in self.homs.values())

    @property
    def dim(self) -> int:
        dims = [v.dim for v in self.homs.values() if not v.discrete]
        return min(dims) if dims else 0

    def graph(self) -> VGraph:
        return VGraph(self.objects, dict(self.homs))

    def hom(self, a: int, b: int) -> Value:
        return self.homs[a, b]

    def obj(self, name: str) -> int:
        try:
            return self.objects.index(name)
        except ValueError:
            raise InputError(f"unknown object '{name}'") from None

    def identity(self, a: int, n: int = 0) -> Hashable:
        return self.homs[a, a].total_degeneracy(self.ids[a], n) if n else self.ids[a]

    def compose(self, a: int, b: int, c: int, n: int, g: Hashable, f: Hashable) -> Hashable:
        """``g o f`` for ``f`` in ``hom(a, b)`` and ``g`` in ``hom(b, c)`` at level ``n``."""
        tables = self.comp[a, b, c]
        return tables[0 if self.discrete else n][g, f]

    @classmethod
    def from_function(cls, objects: Sequence[str], homs: dict[tuple[int, int], Value],
                      ids: Sequence[Hashable], compose: Callable, dim: int | None = None) -> "VCategory":
        """Tabulate ``compose(a, b, c, n, g, f)`` on every level up to ``dim``."""
        discrete = all(v.discrete for v in homs.values())
        if dim is None:
            dims = [v.dim for v in homs.values() if not v.discrete]
            dim = min(dims) if dims else 0
        top = 0 if discrete else dim
        n_obj = len(objects)
        comp = {}
        for a in range(n_obj):
            for b in range(n_obj):
                for c in range(n_obj):
                    tables = []
                    for n in range(top + 1):
                        tables.append({(g, f): compose(a, b, c, n, g, f)
                                       for f in homs[a, b].level(n) for g in homs[b, c].level(n)})
                    comp[a, b, c] = tuple(tables)
        return cls(tuple(objects), dict(homs), comp, tuple(ids))

    def level_category(self, n: int) -> tuple[FinCategory, dict]:
        """The ordinary category of level-``n`` elements, and ``(a, b, x) -> morphism index``."""
        key = ("level", n)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        morphisms, index = [], {}
        N = len(self.objects)
        for a in range(N):
            for b in range(N):
                for x in self.homs[a, b].level(n):
                    index[a, b, x] = len(morphisms)
                    morphisms.append((f"{self.objects[a]}>{self.objects[b]}:{label_name(x)}", a, b))
        identities = tuple(index[a, a, self.identity(a, n)] for a in range(N))
        comp = {}
        for a in range(N):
            for b in range(N):
                for c in range(N):
                    for f in self.homs[a, b].level(n):
                        for g in self.homs[b, c].level(n):
                            comp[index[b, c, g], index[a, b, f]] = index[a, c, self.compose(a, b, c, n, g, f)]
        hit = (FinCategory(self.objects, tuple(morphisms), identities, comp), index)
        self._cache[key] = hit
        return hit

    def validate(self) -> list[str]:
        problems = []
        N = len(self.objects)
        for a in range(N):
            for b in range(N):
                if (a, b) not in self.homs:
                    problems.append(f"homs: missing pair ({self.objects[a]}, {self.objects[b]})")
        if problems:
            return problems
        for (a, b), v in self.homs.items():
            problems.extend(f"hom ({self.objects[a]}, {self.objects[b]}): {p}" for p in v.validate())
        for a in range(N):
            if not self.homs[a, a].contains(0, self.ids[a]):
                problems.append(f"identity of '{self.objects[a]}' is not in its hom value")
        if problems:
            return problems
        top = 0 if self.discrete else self.dim
        for a in range(N):
            for b in range(N):
                for c in range(N):
                    if (a, b, c) not in self.comp:
                        problems.append(f"compose: missing triple ({a}, {b}, {c})")
                        continue
                    for n in range(top + 1):
                        table = self.comp[a, b, c][n]
                        for f in self.homs[a, b].level(n):
                            for g in self.homs[b, c].level(n):
                                gf = table.get((g, f))
                                if gf is None:
                                    problems.append(
                                        f"compose: missing pair ({label_name(g)}, {label_name(f)}) "
                                        f"at level {n} for ({self.objects[a]}, {self.objects[b]}, {self.objects[c]})")
                                elif not self.homs[a, c].contains(n, gf):
                                    problems.append(f"compose: {label_name(gf)} is not in hom ({a}, {c})")
        if problems:
            return problems
        for n in range(top + 1):
            for a in range(N):
                for b in range(N):
                    for f in self.homs[a, b].level(n):
                        if self.compose(a, a, b, n, f, self.identity(a, n)) != f or \
                                self.compose(a, b, b, n, self.identity(b, n), f) != f:
                            problems.append(f"unit law fails at level {n} for {label_name(f)}")
                        if n:
                            for c in range(N):
                                for g in self.homs[b, c].level(n):
                                    gf = self.compose(a, b, c, n, g, f)
                                    for i in range(n + 1):
                                        lhs = self.homs[a, c].face(n, gf, i)
                                        rhs = self.compose(a, b, c, n - 1, self.homs[b, c].face(n, g, i),
                                                           self.homs[a, b].face(n, f, i))
                                        if lhs != rhs:
                                            problems.append(f"composition does not commute with d{i} at level {n}")
            for a in range(N):
                for b in range(N):
                    for c in range(N):
                        for d in range(N):
                            for f in self.homs[a, b].level(n):
                                for g in self.homs[b, c].level(n):
                                    gf = self.compose(a, b, c, n, g, f)
                                    for h in self.homs[c, d].level(n):
                                        if self.compose(a, c, d, n, h, gf) != self.compose(
                                                a, b, d, n, self.compose(b, c, d, n, h, g), f):
                                            problems.append(
                                                f"associativity fails at level {n} on "
                                                f"({label_name(h)}, {label_name(g)}, {label_name(f)})")
        return problems


@dataclass(frozen=True, eq=False)
class VFunctor:
    """``maps[(a, b)]`` sends ``hom(a, b)`` into ``hom(F a, F b)``."""

    source: VCategory
    target: VCategory
    obj_map: tuple[int, ...]
    maps: dict[tuple[int, int], ValueMap]

    def __call__(self, a: int, b: int, n: int, x: Hashable) -> Hashable:
        return self.maps[a, b](n, x)

    def validate(self) -> list[str]:
        C, D, F = self.source, self.target, self.obj_map
        problems = []
        N = len(C.objects)
        top = 0 if C.discrete else C.dim
        if not D.discrete:
            top = min(top, D.dim)
        for a in range(N):
            for b in range(N):
                problems.extend(f"map ({C.objects[a]}, {C.objects[b]}): {p}"
                                for p in self.maps[a, b].validate(top))
        if problems:
            return problems
        for a in range(N):
            if self(a, a, 0, C.ids[a]) != D.ids[F[a]]:
                problems.append(f"identity of '{C.objects[a]}' not preserved")
        for n in range(top + 1):
            for a in range(N):
                for b in range(N):
                    for c in range(N):
                        for f in C.homs[a, b].level(n):
                            for g in C.homs[b, c].level(n):
                                lhs = self(a, c, n, C.compose(a, b, c, n, g, f))
                                rhs = D.compose(F[a], F[b], F[c], n, self(b, c, n, g), self(a, b, n, f))
                                if lhs != rhs:
                                    problems.append(f"composition not preserved at level {n}")
        return problems


def discrete_vcategory(C: FinCategory) -> VCategory:
    """``C`` enriched in finite sets; elements are morphism names."""
    N = len(C.objects)
    homs = {(a, b): Value.from_set(C.name(m) for m in C.hom(a, b)) for a in range(N) for b in range(N)}
    ids = tuple(C.name(i) for i in C.identities)
    return VCategory.from_function(C.objects, homs, ids,
                                   lambda a, b, c, n, g, f: C.name(C.compose(C.mor(g), C.mor(f))))


def terminal_vcategory() -> VCategory:
    return VCategory(("*",), {(0, 0): Value.point("id_*")}, {(0, 0, 0): ({("id_*", "id_*"): "id_*"},)},
                     ("id_*",))


def u_category(S: Value) -> VCategory:
    """Two objects ``x, y`` with ``hom(x, y) = S``, points on the diagonal, nothing back."""
    homs = {(0, 0): Value.point("id_x"), (1, 1): Value.point("id_y"), (0, 1): S, (1, 0): Value.empty()}

    def compose(a, b, c, n, g, f):
        if a == b:
            return g
        return f

    return VCategory.from_function(("x", "y"), homs, ("id_x", "id_y"), compose)
