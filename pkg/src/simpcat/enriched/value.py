"""Finite values of the enrichment base.

A :class:`Value` is a levelwise simplicial set: ``levels[n]`` lists every
``n``-simplex (degenerate ones included) by a hashable label, with face
and degeneracy tables.  Finite sets are the ``discrete`` values: one level
whose elements repeat unchanged in every dimension with identity
operators, so a discrete value can be read at any level.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Sequence

from scipy.cluster.hierarchy import DisjointSet

from ..errors import InputError, TruncationError
from ..simpset import SSet, Simplex, _factor, degeneracy_map, surj_to_word

__all__ = [
    "Value",
    "ValueMap",
    "chain_value",
    "nerve_value",
    "label_name",
]


def label_name(x: Hashable) -> str:
    if isinstance(x, str):
        return x
    if isinstance(x, tuple):
        return "(" + ",".join(label_name(y) for y in x) + ")"
    return str(x)


@dataclass(frozen=True, eq=False)
class Value:
    dim: int
    levels: tuple[tuple, ...]
    face_table: tuple[dict, ...] = ()
    degen_table: tuple[dict, ...] = ()
    discrete: bool = False
    _cache: dict = field(default_factory=dict, repr=False)

    # -- constructors ---------------------------------------------------------

    @classmethod
    def from_set(cls, elements: Iterable[Hashable]) -> "Value":
        elements = tuple(elements)
        if len(set(elements)) != len(elements):
            raise InputError("set value has repeated elements")
        return cls(0, (elements,), ({},), ({},), True)

    @classmethod
    def point(cls, label: Hashable = "*") -> "Value":
        return cls.from_set([label])

    @classmethod
    def empty(cls) -> "Value":
        return cls.from_set([])

    @classmethod
    def from_sset(cls, X: SSet) -> "Value":
        """Every simplex of ``X`` labelled by its printed name."""
        levels, faces, degens = [], [], []
        for n in range(X.max_dim + 1):
            simplices = X.simplices(n)
            names = tuple(X.name(s) for s in simplices)
            if len(set(names)) != len(names):
                raise InputError(f"simplicial value: repeated simplex names in dimension {n}")
            levels.append(names)
            faces.append({} if n == 0 else {
                X.name(s): tuple(X.name(X.face(s, i)) for i in range(n + 1)) for s in simplices})
            degens.append({} if n == X.max_dim else {
                X.name(s): tuple(X.name(X.degeneracy(s, i)) for i in range(n + 1)) for s in simplices})
        return cls(X.max_dim, tuple(levels), tuple(faces), tuple(degens), False)

    # -- access ---------------------------------------------------------------

    def level(self, n: int) -> tuple:
        if self.discrete:
            return self.levels[0]
        if n > self.dim:
            raise TruncationError(f"value truncated at {self.dim}, level {n} requested")
        return self.levels[n]

    def size(self, n: int = 0) -> int:
        return len(self.level(n))

    def sizes(self) -> tuple[int, ...]:
        return tuple(len(l) for l in self.levels)

    def is_empty(self) -> bool:
        return not self.levels[0]

    def contains(self, n: int, x: Hashable) -> bool:
        key = ("members", n)
        hit = self._cache.get(key)
        if hit is None:
            hit = self._cache[key] = frozenset(self.level(n))
        return x in hit

    def face(self, n: int, x: Hashable, i: int) -> Hashable:
        if self.discrete:
            return x
        return self.face_table[n][x][i]

    def degeneracy(self, n: int, x: Hashable, i: int) -> Hashable:
        if self.discrete:
            return x
        if n + 1 > self.dim:
            raise TruncationError(f"value truncated at {self.dim}, degeneracy into level {n + 1}")
        return self.degen_table[n][x][i]

    def apply(self, n: int, x: Hashable, alpha: Sequence[int]) -> Hashable:
        """``alpha^*(x)`` for a monotone ``alpha: [k] -> [n]``."""
        if self.discrete:
            return x
        image, sigma = _factor(alpha)
        present = set(image)
        cur, m = x, n
        for j in sorted((t for t in range(n + 1) if t not in present), reverse=True):
            cur = self.face(m, cur, j)
            m -= 1
        for i in reversed(surj_to_word(sigma)):
            cur = self.degeneracy(m, cur, i)
            m += 1
        return cur

    def vertex(self, n: int, x: Hashable, v: int = 0) -> Hashable:
        return self.apply(n, x, (v,))

    def total_degeneracy(self, x: Hashable, n: int) -> Hashable:
        """A vertex pushed up to level ``n``."""
        return self.apply(0, x, (0,) * (n + 1))

    def nondegenerate(self, n: int) -> list:
        if self.discrete:
            return list(self.levels[0]) if n == 0 else []
        if n == 0:
            return list(self.levels[0])
        hit = {self.degeneracy(n - 1, y, j) for y in self.levels[n - 1] for j in range(n)}
        return [x for x in self.levels[n] if x not in hit]

    # -- components -----------------------------------------------------------

    def components(self) -> list[tuple]:
        """Connected components of the vertices, in order of first vertex."""
        hit = self._cache.get("components")
        if hit is None:
            verts = self.levels[0]
            ds = DisjointSet(verts)
            if not self.discrete and self.dim >= 1:
                for e in self.levels[1]:
                    ds.merge(self.face(1, e, 0), self.face(1, e, 1))
            pos = {v: k for k, v in enumerate(verts)}
            hit = sorted((tuple(sorted(s, key=pos.__getitem__)) for s in ds.subsets()),
                         key=lambda c: pos[c[0]])
            self._cache["components"] = hit
        return hit

    def component_of(self, n: int, x: Hashable) -> int:
        table = self._cache.get("component_index")
        if table is None:
            table = {v: k for k, comp in enumerate(self.components()) for v in comp}
            self._cache["component_index"] = table
        return table[self.vertex(n, x) if n > 0 else x]

    def restrict_components(self, keep: Iterable[int]) -> "Value":
        keep = set(keep)
        return self.restrict(lambda n, x: self.component_of(n, x) in keep)

    def restrict(self, pred: Callable[[int, Hashable], bool]) -> "Value":
        """Sub-value of elements satisfying ``pred``; must be closed under the operators."""
        if self.discrete:
            return Value.from_set(x for x in self.levels[0] if pred(0, x))
        levels = tuple(tuple(x for x in self.levels[n] if pred(n, x)) for n in range(self.dim + 1))
        keep = [set(l) for l in levels]
        faces = tuple({x: self.face_table[n][x] for x in levels[n]} if n else {} for n in range(self.dim + 1))
        degens = tuple({x: self.degen_table[n][x] for x in levels[n]} if n < self.dim else {}
                       for n in range(self.dim + 1))
        for n in range(1, self.dim + 1):
            for x in levels[n]:
                if any(y not in keep[n - 1] for y in faces[n][x]):
                    raise InputError("restriction is not closed under faces")
        return Value(self.dim, levels, faces, degens, False)

    # -- constructions ---------------------------------------------------------

    def extend_to(self, dim: int) -> "Value":
        """The same value with explicit levels up to ``dim`` (discrete values only grow)."""
        if dim == self.dim and not self.discrete:
            return self
        if not self.discrete:
            if dim < self.dim:
                return self.truncate(dim)
            raise TruncationError(f"cannot extend a value truncated at {self.dim} to {dim}")
        elems = self.levels[0]
        levels = tuple(elems for _ in range(dim + 1))
        faces = tuple({} if n == 0 else {x: (x,) * (n + 1) for x in elems} for n in range(dim + 1))
        degens = tuple({x: (x,) * (n + 1) for x in elems} if n < dim else {} for n in range(dim + 1))
        return Value(dim, levels, faces, degens, False)

    def truncate(self, dim: int) -> "Value":
        if self.discrete or dim >= self.dim:
            return self
        degens = tuple(self.degen_table[n] if n < dim else {} for n in range(dim + 1))
        return Value(dim, self.levels[: dim + 1], self.face_table[: dim + 1], degens, False)

    def to_sset(self, max_dim: int | None = None, name: Callable[[Hashable], str] = label_name) -> SSet:
        """The simplicial set with the nondegenerate elements as cells."""
        return self.to_sset_with_names(max_dim, name)[0]

    def to_sset_with_names(self, max_dim: int | None = None, name: Callable[[Hashable], str] = label_name
                           ) -> tuple[SSet, dict]:
        """:meth:`to_sset` plus the printed simplex name of every element, keyed by ``(level, element)``."""
        V = self
        if max_dim is None:
            max_dim = 0 if self.discrete else self.dim
        if self.discrete:
            V = self.extend_to(max_dim)
        elif max_dim > self.dim:
            raise TruncationError(f"value truncated at {self.dim}, requested {max_dim}")
        nondeg = [V.nondegenerate(n) for n in range(max_dim + 1)]
        index = [{x: k for k, x in enumerate(layer)} for layer in nondeg]
        reps: dict[tuple[int, Hashable], Simplex] = {}

        def represent(n: int, y: Hashable) -> Simplex:
            key = (n, y)
            if key in reps:
                return reps[key]
            if y in index[n]:
                out = Simplex.nondegenerate(n, index[n][y])
            else:
                for j in range(n):
                    below = V.face(n, y, j)
                    if V.degeneracy(n - 1, below, j) == y:
                        inner = represent(n - 1, below)
                        sigma = degeneracy_map(n - 1, j)
                        out = Simplex(inner.cell, tuple(inner.surj[s] for s in sigma))
                        break
                else:
                    raise InputError(f"element {y!r} at level {n} is neither nondegenerate nor degenerate")
            reps[key] = out
            return out

        names = tuple(tuple(name(x) for x in layer) for layer in nondeg)
        faces = [tuple(() for _ in nondeg[0])]
        for n in range(1, max_dim + 1):
            faces.append(tuple(tuple(represent(n - 1, V.face(n, x, i)) for i in range(n + 1))
                               for x in nondeg[n]))
        X = SSet(max_dim, names, tuple(faces))
        printed = {(n, x): X.name(represent(n, x)) for n in range(max_dim + 1) for x in V.level(n)}
        return X, printed

    def product(self, other: "Value") -> "Value":
        if self.discrete and other.discrete:
            return Value.from_set(itertools.product(self.levels[0], other.levels[0]))
        dim = min(d for d, disc in ((self.dim, self.discrete), (other.dim, other.discrete)) if not disc)
        A, B = self.extend_to(dim) if self.discrete else self.truncate(dim), \
            other.extend_to(dim) if other.discrete else other.truncate(dim)
        levels = tuple(tuple(itertools.product(A.levels[n], B.levels[n])) for n in range(dim + 1))
        faces = tuple({} if n == 0 else {
            (a, b): tuple(zip(A.face_table[n][a], B.face_table[n][b])) for a, b in levels[n]}
            for n in range(dim + 1))
        degens = tuple({} if n == dim else {
            (a, b): tuple(zip(A.degen_table[n][a], B.degen_table[n][b])) for a, b in levels[n]}
            for n in range(dim + 1))
        return Value(dim, levels, faces, degens, False)

    @staticmethod
    def coproduct(values: Sequence["Value"]) -> "Value":
        """Labels become ``(k, x)`` for the ``k``-th summand."""
        values = list(values)
        if all(v.discrete for v in values):
            return Value.from_set((k, x) for k, v in enumerate(values) for x in v.levels[0])
        dim = min(v.dim for v in values if not v.discrete)
        parts = [v.extend_to(dim) if v.discrete else v.truncate(dim) for v in values]
        levels = tuple(tuple((k, x) for k, v in enumerate(parts) for x in v.levels[n]) for n in range(dim + 1))
        faces = tuple({} if n == 0 else {
            (k, x): tuple((k, y) for y in v.face_table[n][x]) for k, v in enumerate(parts) for x in v.levels[n]}
            for n in range(dim + 1))
        degens = tuple({} if n == dim else {
            (k, x): tuple((k, y) for y in v.degen_table[n][x]) for k, v in enumerate(parts) for x in v.levels[n]}
            for n in range(dim + 1))
        return Value(dim, levels, faces, degens, False)

    # -- checks -----------------------------------------------------------------

    def validate(self) -> list[str]:
        if self.discrete:
            if len(set(self.levels[0])) != len(self.levels[0]):
                return ["repeated elements"]
            return []
        problems = []
        if len(self.levels) != self.dim + 1:
            return [f"expected {self.dim + 1} levels, got {len(self.levels)}"]
        members = [set(l) for l in self.levels]
        for n in range(1, self.dim + 1):
            for x in self.levels[n]:
                fs = self.face_table[n].get(x)
                if fs is None or len(fs) != n + 1 or any(y not in members[n - 1] for y in fs):
                    problems.append(f"level {n} element {label_name(x)}: bad faces")
        for n in range(self.dim):
            for x in self.levels[n]:
                ss = self.degen_table[n].get(x)
                if ss is None or len(ss) != n + 1 or any(y not in members[n + 1] for y in ss):
                    problems.append(f"level {n} element {label_name(x)}: bad degeneracies")
        if problems:
            return problems
        d, s = self.face, self.degeneracy
        for n in range(2, self.dim + 1):
            for x in self.levels[n]:
                for j in range(n + 1):
                    for i in range(j):
                        if d(n - 1, d(n, x, j), i) != d(n - 1, d(n, x, i), j - 1):
                            problems.append(f"level {n} element {label_name(x)}: d{i} d{j} != d{j - 1} d{i}")
        for n in range(self.dim):
            for x in self.levels[n]:
                for j in range(n + 1):
                    y = s(n, x, j)
                    for i in range(n + 2):
                        got = d(n + 1, y, i)
                        if i in (j, j + 1):
                            want = x
                        elif i < j:
                            want = s(n - 1, d(n, x, i), j - 1)
                        else:
                            want = s(n - 1, d(n, x, i - 1), j)
                        if got != want:
                            problems.append(f"level {n} element {label_name(x)}: d{i} s{j} identity fails")
                    if n + 2 <= self.dim:
                        for i in range(j + 1):
                            if s(n + 1, y, i) != s(n + 1, s(n, x, i), j + 1):
                                problems.append(f"level {n} element {label_name(x)}: s{i} s{j} identity fails")
        return problems


@dataclass(frozen=True, eq=False)
class ValueMap:
    """``levels[n][x]`` is the image of the level-``n`` element ``x``."""

    source: Value
    target: Value
    levels: tuple[dict, ...]

    def __call__(self, n: int, x: Hashable) -> Hashable:
        if self.source.discrete:
            y = self.levels[0][x]
            return self.target.total_degeneracy(y, n) if n else y
        return self.levels[n][x]

    @classmethod
    def from_function(cls, source: Value, target: Value, fn: Callable[[int, Hashable], Hashable],
                      dim: int | None = None) -> "ValueMap":
        top = 0 if source.discrete else source.dim if dim is None else dim
        return cls(source, target, tuple({x: fn(n, x) for x in source.level(n)} for n in range(top + 1)))

    def is_injective(self) -> bool:
        return all(len(set(table.values())) == len(table) for table in self.levels)

    def validate(self, dim: int | None = None) -> list[str]:
        S, T = self.source, self.target
        top = dim if dim is not None else (0 if S.discrete else S.dim)
        if not T.discrete:
            top = min(top, T.dim)
        problems = []
        for n in range(top + 1):
            for x in S.level(n):
                y = self(n, x)
                if not T.contains(n, y):
                    problems.append(f"level {n}: {label_name(x)} sent outside the target")
                    continue
                if n:
                    for i in range(n + 1):
                        if T.face(n, y, i) != self(n - 1, S.face(n, x, i)):
                            problems.append(f"level {n}: {label_name(x)} face {i} not preserved")
                if n < top:
                    for i in range(n + 1):
                        if T.degeneracy(n, y, i) != self(n + 1, S.degeneracy(n, x, i)):
                            problems.append(f"level {n}: {label_name(x)} degeneracy {i} not preserved")
        return problems


def chain_value(elements: Sequence[Hashable], leq: Callable[[Hashable, Hashable], bool], dim: int) -> Value:
    """Nerve of a finite poset with all weakly increasing chains as elements."""
    elements = list(elements)
    levels = [tuple((e,) for e in elements)]
    for n in range(1, dim + 1):
        levels.append(tuple(c + (e,) for c in levels[-1] for e in elements if leq(c[-1], e)))
    faces = tuple({} if n == 0 else {c: tuple(c[:i] + c[i + 1:] for i in range(n + 1)) for c in levels[n]}
                  for n in range(dim + 1))
    degens = tuple({} if n == dim else {c: tuple(c[:i + 1] + c[i:] for i in range(n + 1)) for c in levels[n]}
                   for n in range(dim + 1))
    return Value(dim, tuple(levels), faces, degens, False)


def nerve_value(H, dim: int) -> Value:
    """Full nerve of a :class:`~simpcat.fincat.FinCategory`, identities kept.

    Level 0 labels are object names; level ``n`` labels are tuples of ``n``
    morphism names in path order.
    """
    chains = [[(a, ()) for a in range(len(H.objects))]]
    for n in range(1, dim + 1):
        chains.append([(s, seq + (m,)) for s, seq in chains[-1]
                       for m in H.out_of(H.tgt(seq[-1]) if seq else s)])

    def label(c):
        s, seq = c
        return H.objects[s] if not seq else tuple(H.name(m) for m in seq)

    def at(c, k):
        s, seq = c
        return s if k == 0 else H.tgt(seq[k - 1])

    levels = tuple(tuple(label(c) for c in chains[n]) for n in range(dim + 1))
    faces = [{}]
    degens = []
    for n in range(dim + 1):
        if n:
            table = {}
            for c in chains[n]:
                s, seq = c
                out = []
                for i in range(n + 1):
                    if i == 0:
                        out.append(label((H.tgt(seq[0]), seq[1:])))
                    elif i == n:
                        out.append(label((s, seq[:-1])))
                    else:
                        out.append(label((s, seq[:i - 1] + (H.compose(seq[i], seq[i - 1]),) + seq[i + 1:])))
                table[label(c)] = tuple(out)
            faces.append(table)
        if n < dim:
            table = {}
            for c in chains[n]:
                s, seq = c
                table[label(c)] = tuple(
                    label((s, seq[:i] + (H.identities[at(c, i)],) + seq[i:])) for i in range(n + 1))
            degens.append(table)
        else:
            degens.append({})
    return Value(dim, levels, tuple(faces), tuple(degens), False)
