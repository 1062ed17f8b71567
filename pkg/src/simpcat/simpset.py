"""Finite, dimension-truncated simplicial sets.

Only nondegenerate simplices are stored.  Every simplex, degenerate or not,
is a :class:`Simplex` ``(cell, surj)``: the index of a nondegenerate cell of
dimension ``surj[-1]`` together with a monotone surjection
``surj: [n] -> [m]``, meaning the simplex ``surj^*(cell)``.  This is the
Eilenberg-Zilber normal form; the equivalent degeneracy word (strictly
decreasing indices) is available through :func:`surj_to_word`.

Simplicial operators are given as monotone maps ``alpha: [k] -> [n]``
encoded as tuples; ``X.apply(x, alpha)`` computes ``alpha^*(x)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

from scipy.cluster.hierarchy import DisjointSet

from .errors import BudgetExceeded, InputError, TruncationError

__all__ = [
    "Simplex",
    "SSet",
    "Poset",
    "SimplicialMap",
    "HornWitness",
    "HornReport",
    "face_map",
    "degeneracy_map",
    "surjections",
    "surj_to_word",
    "word_to_surj",
    "generator",
    "nerve_of_poset",
    "find_fillers",
    "horn_maps",
    "is_kan_up_to",
    "is_quasicategory_up_to",
    "pi0",
    "enumerate_maps",
    "spine_names",
]


# ---------------------------------------------------------------------------
# monotone maps


def face_map(n: int, i: int) -> tuple[int, ...]:
    """The coface ``delta_i: [n-1] -> [n]`` skipping ``i``."""
    return tuple(j if j < i else j + 1 for j in range(n))


def degeneracy_map(n: int, i: int) -> tuple[int, ...]:
    """The codegeneracy ``sigma_i: [n+1] -> [n]`` hitting ``i`` twice."""
    return tuple(j if j <= i else j - 1 for j in range(n + 2))


def surjections(n: int, m: int) -> list[tuple[int, ...]]:
    """All monotone surjections ``[n] -> [m]`` in lexicographic order."""
    out = []
    for steps in itertools.combinations(range(1, n + 1), m):
        step_set = set(steps)
        theta = [0]
        for t in range(1, n + 1):
            theta.append(theta[-1] + (1 if t in step_set else 0))
        out.append(tuple(theta))
    out.sort()
    return out


def surj_to_word(surj: Sequence[int]) -> tuple[int, ...]:
    """Degeneracy word ``s_{i1} ... s_{ik}`` (i1 > ... > ik) of a surjection."""
    return tuple(sorted((j for j in range(len(surj) - 1) if surj[j] == surj[j + 1]), reverse=True))


def word_to_surj(word: Sequence[int], n: int) -> tuple[int, ...]:
    """Inverse of :func:`surj_to_word` for a simplex of dimension ``n``."""
    word = tuple(word)
    if any(a <= b for a, b in zip(word, word[1:])):
        raise InputError(f"degeneracy word {list(word)} is not strictly decreasing")
    if any(j < 0 or j >= n for j in word):
        raise InputError(f"degeneracy word {list(word)} out of range for dimension {n}")
    theta = [0]
    for t in range(1, n + 1):
        theta.append(theta[-1] + (0 if (t - 1) in word else 1))
    return tuple(theta)


def _is_surjection(theta: Sequence[int]) -> bool:
    if not theta or theta[0] != 0:
        return False
    return all(b - a in (0, 1) for a, b in zip(theta, theta[1:]))


def _factor(beta: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Epi-mono factorization ``beta = iota o sigma``."""
    image = sorted(set(beta))
    pos = {v: k for k, v in enumerate(image)}
    return tuple(image), tuple(pos[b] for b in beta)


# ---------------------------------------------------------------------------
# simplicial sets


class Simplex(NamedTuple):
    cell: int
    surj: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.surj) - 1

    @property
    def base_dim(self) -> int:
        return self.surj[-1]

    @property
    def degenerate(self) -> bool:
        return self.base_dim != self.dim

    @classmethod
    def nondegenerate(cls, dim: int, cell: int) -> "Simplex":
        return cls(cell, tuple(range(dim + 1)))


@dataclass(frozen=True)
class SSet:
    """A simplicial set truncated at ``max_dim``.

    ``names[d]`` lists the nondegenerate ``d``-simplices and
    ``faces[d][k]`` holds ``(d_0 x, ..., d_d x)`` for the ``k``-th of them
    (empty for vertices).
    """

    max_dim: int
    names: tuple[tuple[str, ...], ...]
    faces: tuple[tuple[tuple[Simplex, ...], ...], ...]
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        if len(self.names) != self.max_dim + 1 or len(self.faces) != self.max_dim + 1:
            raise InputError(f"cells/faces must list dimensions 0..{self.max_dim}")
        for d in range(self.max_dim + 1):
            if len(self.faces[d]) != len(self.names[d]):
                raise InputError(f"dimension {d}: {len(self.names[d])} cells but {len(self.faces[d])} face lists")

    # -- construction -------------------------------------------------------

    @classmethod
    def from_face_entries(cls, max_dim: int, names: Sequence[Sequence[str]],
                          entries: Iterable[Sequence]) -> "SSet":
        """Build from ``[dim, cell, face_index, target_cell, degeneracy_word]`` rows."""
        names = tuple(tuple(n) for n in names)
        if len(names) != max_dim + 1:
            raise InputError(f"cells: expected {max_dim + 1} dimensions, got {len(names)}")
        table: dict[tuple[int, int, int], Simplex] = {}
        for row in entries:
            if len(row) != 5:
                raise InputError(f"faces: malformed entry {row!r}")
            d, c, i, target, word = row
            if not (1 <= d <= max_dim) or not (0 <= c < len(names[d])) or not (0 <= i <= d):
                raise InputError(f"faces: entry {row!r} references a missing simplex or face index")
            surj = word_to_surj(word, d - 1)
            base = surj[-1]
            if not (0 <= target < len(names[base])):
                raise InputError(f"faces: entry {row!r} targets missing cell {target} in dimension {base}")
            if (d, c, i) in table:
                raise InputError(f"faces: duplicate entry for simplex ({d}, {c}) face {i}")
            table[d, c, i] = Simplex(target, surj)
        faces = [tuple(() for _ in names[0])]
        for d in range(1, max_dim + 1):
            per_dim = []
            for c in range(len(names[d])):
                row = []
                for i in range(d + 1):
                    if (d, c, i) not in table:
                        raise InputError(f"faces: missing face {i} of simplex ({d}, {c}) '{names[d][c]}'")
                    row.append(table[d, c, i])
                per_dim.append(tuple(row))
            faces.append(tuple(per_dim))
        return cls(max_dim, names, tuple(faces))

    def face_entries(self) -> list[list]:
        rows = []
        for d in range(1, self.max_dim + 1):
            for c, fs in enumerate(self.faces[d]):
                for i, f in enumerate(fs):
                    rows.append([d, c, i, f.cell, list(surj_to_word(f.surj))])
        return rows

    # -- basic queries ------------------------------------------------------

    def count(self, d: int) -> int:
        if d > self.max_dim:
            raise TruncationError(f"dimension {d} exceeds truncation {self.max_dim}")
        return len(self.names[d])

    def counts(self) -> tuple[int, ...]:
        return tuple(len(n) for n in self.names)

    def cell(self, d: int, k: int) -> Simplex:
        return Simplex.nondegenerate(d, k)

    def name(self, x: Simplex) -> str:
        base = self.names[x.base_dim][x.cell]
        if not x.degenerate:
            return base
        return "s" + "".join(map(str, surj_to_word(x.surj))) + "(" + base + ")"

    def truncate(self, d: int) -> "SSet":
        if d >= self.max_dim:
            return self
        return SSet(d, self.names[: d + 1], self.faces[: d + 1])

    # -- simplicial operators -----------------------------------------------

    def apply(self, x: Simplex, alpha: Sequence[int]) -> Simplex:
        """``alpha^*(x)`` for a monotone ``alpha: [k] -> [dim x]``."""
        beta = tuple(x.surj[a] for a in alpha)
        image, sigma = _factor(beta)
        y = self._restrict(x.base_dim, x.cell, image)
        return Simplex(y.cell, tuple(y.surj[s] for s in sigma))

    def _restrict(self, m: int, cell: int, iota: tuple[int, ...]) -> Simplex:
        if len(iota) == m + 1:
            return Simplex.nondegenerate(m, cell)
        key = ("restrict", m, cell, iota)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        present = set(iota)
        j = max(t for t in range(m + 1) if t not in present)
        rest = tuple(t if t < j else t - 1 for t in iota)
        out = self.apply(self.faces[m][cell][j], rest)
        self._cache[key] = out
        return out

    def face(self, x: Simplex, i: int) -> Simplex:
        if not 0 <= i <= x.dim or x.dim == 0:
            raise InputError(f"face d{i} undefined on a {x.dim}-simplex")
        return self.apply(x, face_map(x.dim, i))

    def degeneracy(self, x: Simplex, i: int) -> Simplex:
        if not 0 <= i <= x.dim:
            raise InputError(f"degeneracy s{i} undefined on a {x.dim}-simplex")
        return self.apply(x, degeneracy_map(x.dim, i))

    def vertices(self, x: Simplex) -> tuple[int, ...]:
        return tuple(self.apply(x, (v,)).cell for v in range(x.dim + 1))

    def simplices(self, n: int) -> tuple[Simplex, ...]:
        """All ``n``-simplices, nondegenerate ones first."""
        if n > self.max_dim:
            raise TruncationError(f"dimension {n} exceeds truncation {self.max_dim}")
        key = ("simplices", n)
        hit = self._cache.get(key)
        if hit is None:
            out = []
            for m in range(n, -1, -1):
                maps = surjections(n, m)
                for c in range(len(self.names[m])):
                    out.extend(Simplex(c, s) for s in maps)
            hit = self._cache[key] = tuple(out)
        return hit

    def by_face(self, n: int, i: int) -> dict[Simplex, list[Simplex]]:
        """Index of all ``n``-simplices by their ``i``-th face."""
        key = ("by_face", n, i)
        hit = self._cache.get(key)
        if hit is None:
            hit = {}
            for x in self.simplices(n):
                hit.setdefault(self.face(x, i), []).append(x)
            self._cache[key] = hit
        return hit

    def _horn_index(self, n: int, i: int) -> dict[tuple[Simplex, ...], list[Simplex]]:
        key = ("horn_index", n, i)
        hit = self._cache.get(key)
        if hit is None:
            hit = {}
            for x in self.simplices(n):
                k = tuple(self.face(x, j) for j in range(n + 1) if j != i)
                hit.setdefault(k, []).append(x)
            self._cache[key] = hit
        return hit

    # -- validation / comparison ---------------------------------------------

    def validate(self) -> list[str]:
        """Structural problems (empty when the data is a truncated simplicial set)."""
        problems = []
        for c, fs in enumerate(self.faces[0]):
            if fs:
                problems.append(f"vertex {c} must not have faces")
        for d in range(1, self.max_dim + 1):
            for c, fs in enumerate(self.faces[d]):
                if len(fs) != d + 1:
                    problems.append(f"simplex ({d}, {c}) has {len(fs)} faces, expected {d + 1}")
                    continue
                for i, f in enumerate(fs):
                    if len(f.surj) != d or not _is_surjection(f.surj):
                        problems.append(f"simplex ({d}, {c}) face {i}: bad degeneracy data {f.surj}")
                    elif not (0 <= f.cell < len(self.names[f.base_dim])):
                        problems.append(f"simplex ({d}, {c}) face {i}: cell {f.cell} out of range")
        if problems:
            return problems
        for d in range(2, self.max_dim + 1):
            for c in range(len(self.names[d])):
                x = Simplex.nondegenerate(d, c)
                for j in range(d + 1):
                    for i in range(j):
                        lhs = self.face(self.face(x, j), i)
                        rhs = self.face(self.face(x, i), j - 1)
                        if lhs != rhs:
                            problems.append(
                                f"simplex ({d}, {c}) '{self.names[d][c]}': d{i} d{j} != d{j - 1} d{i}")
        return problems

    def canonical(self) -> dict[int, dict[str, tuple]]:
        """Name-keyed view: two complexes agree cell-for-cell iff these are equal."""
        out = {}
        for d in range(self.max_dim + 1):
            layer = {}
            for c, name in enumerate(self.names[d]):
                layer[name] = tuple(
                    (self.names[f.base_dim][f.cell], surj_to_word(f.surj)) for f in self.faces[d][c])
            out[d] = layer
        return out

    def relabel(self, perms: Sequence[Sequence[int]]) -> "SSet":
        """Reorder cells: ``perms[d][new] = old``."""
        inverse = [{old: new for new, old in enumerate(p)} for p in perms]
        names = tuple(tuple(self.names[d][old] for old in perms[d]) for d in range(self.max_dim + 1))
        faces = [tuple(() for _ in names[0])]
        for d in range(1, self.max_dim + 1):
            faces.append(tuple(
                tuple(Simplex(inverse[f.base_dim][f.cell], f.surj) for f in self.faces[d][old])
                for old in perms[d]))
        return SSet(self.max_dim, names, tuple(faces))


def spine_names(spines: Sequence[Sequence[str]]) -> list[str]:
    """Join each spine with ``;``; spines that print alike get ``[k]`` in the order of their label tuples.

    Morphism names may contain ``;`` themselves, so different spines can
    print the same.  Equal spines keep their given order.
    """
    joined = [";".join(sp) for sp in spines]
    groups: dict[str, list[int]] = {}
    for k, j in enumerate(joined):
        groups.setdefault(j, []).append(k)
    out = list(joined)
    for j, members in groups.items():
        if len(members) > 1:
            for rank, k in enumerate(sorted(members, key=lambda k: (tuple(spines[k]), k))):
                out[k] = f"{j}[{rank}]"
    return out


def _ordered_complex(labels: Sequence[str], simplices: Iterable[tuple[int, ...]], max_dim: int,
                     joiner: str | None = None) -> SSet:
    """Simplicial set of a downward-closed family of vertex tuples; faces delete an entry."""
    by_dim: list[list[tuple[int, ...]]] = [[] for _ in range(max_dim + 1)]
    for s in set(simplices):
        if len(s) - 1 <= max_dim:
            by_dim[len(s) - 1].append(s)
    for layer in by_dim:
        layer.sort()
    index = [{s: k for k, s in enumerate(layer)} for layer in by_dim]
    if joiner is None:
        joiner = "" if all(len(l) == 1 for l in labels) else ","
    names = tuple(tuple(joiner.join(labels[v] for v in s) for s in layer) for layer in by_dim)
    faces = [tuple(() for _ in by_dim[0])]
    for d in range(1, max_dim + 1):
        ident = tuple(range(d))
        per = []
        for s in by_dim[d]:
            row = []
            for i in range(d + 1):
                t = s[:i] + s[i + 1:]
                if t not in index[d - 1]:
                    raise InputError(f"face {t} of {s} is missing")
                row.append(Simplex(index[d - 1][t], ident))
            per.append(tuple(row))
        faces.append(tuple(per))
    return SSet(max_dim, names, tuple(faces))


def _standard_tuples(kind: str, n: int, i: int | None) -> list[tuple[int, ...]]:
    out = []
    for k in range(1, n + 2):
        for s in itertools.combinations(range(n + 1), k):
            if kind != "standard" and len(s) == n + 1:
                continue
            if kind == "horn" and len(s) == n and i not in s:
                continue
            out.append(s)
    return out


def generator(kind: str, n: int, i: int | None = None, max_dim: int | None = None) -> SSet:
    """``Delta^n``, ``boundary Delta^n`` or the horn ``Lambda^n_i``.

    Truncated at ``n`` unless ``max_dim`` asks for more (all higher cells empty).
    """
    if kind not in ("standard", "boundary", "horn"):
        raise InputError(f"kind must be standard, boundary or horn, not {kind!r}")
    if n < 0:
        raise InputError(f"n must be non-negative, got {n}")
    if kind == "horn":
        if n < 1 or i is None or not (0 <= i <= n):
            raise InputError(f"horn Lambda^{n}_{i} needs n >= 1 and 0 <= i <= n")
    labels = [str(v) for v in range(n + 1)]
    top = n if max_dim is None else max(n, max_dim)
    return _ordered_complex(labels, _standard_tuples(kind, n, i), top)


# ---------------------------------------------------------------------------
# posets


@dataclass(frozen=True)
class Poset:
    elements: tuple[str, ...]
    leq: frozenset[tuple[int, int]]

    @classmethod
    def from_relation(cls, elements: Sequence[str], pairs: Iterable[tuple[int, int]]) -> "Poset":
        """Reflexive-transitive closure of ``pairs``; raises if the result is not antisymmetric."""
        n = len(elements)
        reach = [[a == b for b in range(n)] for a in range(n)]
        for a, b in pairs:
            reach[a][b] = True
        for k in range(n):
            for a in range(n):
                if reach[a][k]:
                    for b in range(n):
                        if reach[k][b]:
                            reach[a][b] = True
        poset = cls(tuple(elements), frozenset((a, b) for a in range(n) for b in range(n) if reach[a][b]))
        problems = poset.validate()
        if problems:
            raise InputError(problems[0])
        return poset

    @classmethod
    def chain(cls, n: int) -> "Poset":
        return cls.from_relation([str(k) for k in range(n)], [(k, k + 1) for k in range(n - 1)])

    @classmethod
    def antichain(cls, n: int) -> "Poset":
        return cls.from_relation([str(k) for k in range(n)], [])

    def le(self, a: int, b: int) -> bool:
        return (a, b) in self.leq

    def validate(self) -> list[str]:
        n = len(self.elements)
        problems = []
        for a in range(n):
            if (a, a) not in self.leq:
                problems.append(f"not reflexive at {self.elements[a]}")
        for a, b in self.leq:
            if a != b and (b, a) in self.leq:
                problems.append(f"not antisymmetric: {self.elements[a]} and {self.elements[b]}")
            for c in range(n):
                if (b, c) in self.leq and (a, c) not in self.leq:
                    problems.append(
                        f"not transitive: {self.elements[a]} <= {self.elements[b]} <= {self.elements[c]}")
        return problems


def nerve_of_poset(P: Poset, dim_cap: int) -> SSet:
    """Order complex: nondegenerate ``d``-simplices are strict chains of length ``d + 1``."""
    n = len(P.elements)
    below = [sum(1 for b in range(n) if P.le(b, a)) for a in range(n)]
    order = sorted(range(n), key=lambda a: (below[a], a))
    chains = []
    for k in range(1, min(dim_cap, n - 1) + 2):
        for combo in itertools.combinations(order, k):
            if all(P.le(a, b) for a, b in zip(combo, combo[1:])):
                chains.append(combo)
    return _ordered_complex(P.elements, chains, dim_cap, joiner="<")


# ---------------------------------------------------------------------------
# simplicial maps and horns


@dataclass(frozen=True)
class SimplicialMap:
    """``images[d][k]`` is the image of the ``k``-th nondegenerate ``d``-simplex."""

    source: SSet
    target: SSet
    images: tuple[tuple[Simplex, ...], ...]

    def __call__(self, x: Simplex) -> Simplex:
        return self.target.apply(self.images[x.base_dim][x.cell], x.surj)

    def validate(self) -> list[str]:
        problems = []
        for d in range(len(self.images)):
            if len(self.images[d]) != len(self.source.names[d]):
                problems.append(f"dimension {d}: {len(self.images[d])} images for {len(self.source.names[d])} cells")
                return problems
            for c, y in enumerate(self.images[d]):
                if y.dim != d:
                    problems.append(f"cell ({d}, {c}) sent to a {y.dim}-simplex")
                    continue
                if d == 0:
                    continue
                for i in range(d + 1):
                    if self.target.face(y, i) != self(self.source.faces[d][c][i]):
                        problems.append(f"cell ({d}, {c}) '{self.source.names[d][c]}': face {i} not preserved")
        return problems


@dataclass(frozen=True)
class HornWitness:
    n: int
    i: int
    faces: tuple[Simplex, ...]  # images of d_j for j != i, in increasing j

    def describe(self, X: SSet) -> str:
        js = [j for j in range(self.n + 1) if j != self.i]
        parts = ", ".join(f"d{j}={X.name(f)}" for j, f in zip(js, self.faces))
        return f"Lambda^{self.n}_{self.i}[{parts}]"


@dataclass(frozen=True)
class HornReport:
    verdict: bool
    unique_fillers: bool
    first_failure: HornWitness | None
    horns_checked: int
    dimension: int


def _horn_faces(horn: SimplicialMap) -> tuple[int, int, tuple[Simplex, ...]]:
    src = horn.source
    n = src.max_dim
    for i in range(n + 1):
        if src.canonical() == generator("horn", n, i).canonical():
            tuples = _standard_tuples("horn", n, i)
            layer = sorted(t for t in tuples if len(t) == n)
            faces = []
            for j in range(n + 1):
                if j == i:
                    continue
                t = tuple(v for v in range(n + 1) if v != j)
                faces.append(horn.images[n - 1][layer.index(t)])
            return n, i, tuple(faces)
    raise InputError("horn map source is not a standard horn Lambda^n_i")


def find_fillers(X: SSet, horn: SimplicialMap) -> list[SimplicialMap]:
    """All extensions of ``horn: Lambda^n_i -> X`` along ``Lambda^n_i -> Delta^n``."""
    n, i, key = _horn_faces(horn)
    if n > X.max_dim:
        raise TruncationError(f"horn dimension {n} exceeds truncation {X.max_dim}")
    simplex = generator("standard", n)
    tuples = [sorted(t for t in _standard_tuples("standard", n, None) if len(t) == d + 1) for d in range(n + 1)]
    out = []
    for x in X._horn_index(n, i).get(key, []):
        images = tuple(tuple(X.apply(x, t) for t in tuples[d]) for d in range(n + 1))
        out.append(SimplicialMap(simplex, X, images))
    return out


def horn_maps(X: SSet, n: int, i: int) -> Iterable[tuple[Simplex, ...]]:
    """All horns ``Lambda^n_i -> X`` as face tuples ``(y_j)_{j != i}``.

    Compatibility is ``d_a y_b = d_{b-1} y_a`` for ``a < b``.
    """
    if n > X.max_dim + 1:
        raise TruncationError(f"horn dimension {n} exceeds truncation {X.max_dim}")
    js = [j for j in range(n + 1) if j != i]
    if n == 1:
        for v in X.simplices(0):
            yield (v,)
        return
    chosen: list[Simplex] = []

    def extend(p: int):
        if p == len(js):
            yield tuple(chosen)
            return
        b = js[p]
        if p == 0:
            cands: Iterable[Simplex] = X.simplices(n - 1)
        else:
            a0 = js[0]
            need = X.face(chosen[0], b - 1)
            cands = X.by_face(n - 1, a0).get(need, [])
        for y in cands:
            ok = True
            for q in range(1, p):
                a = js[q]
                if X.face(y, a) != X.face(chosen[q], b - 1):
                    ok = False
                    break
            if ok:
                chosen.append(y)
                yield from extend(p + 1)
                chosen.pop()

    yield from extend(0)


def _horn_scan(X: SSet, d: int, inner: bool) -> HornReport:
    if d > X.max_dim:
        raise TruncationError(f"requested dimension {d} exceeds truncation {X.max_dim}")
    checked = 0
    unique = True
    for n in range(1, d + 1):
        positions = range(1, n) if inner else range(n + 1)
        for i in positions:
            index = X._horn_index(n, i)
            for faces in horn_maps(X, n, i):
                checked += 1
                fillers = index.get(faces, ())
                if not fillers:
                    return HornReport(False, False, HornWitness(n, i, faces), checked, d)
                if len(fillers) > 1:
                    unique = False
    return HornReport(True, unique, None, checked, d)


def is_kan_up_to(X: SSet, d: int) -> HornReport:
    """Every horn ``Lambda^n_i -> X`` with ``1 <= n <= d`` has a filler."""
    return _horn_scan(X, d, inner=False)


def is_quasicategory_up_to(X: SSet, d: int) -> HornReport:
    """Every inner horn (``0 < i < n <= d``) has a filler; also records uniqueness."""
    return _horn_scan(X, d, inner=True)


def pi0(X: SSet) -> list[tuple[int, ...]]:
    """Connected components of the vertices, each sorted, listed by smallest vertex."""
    ds = DisjointSet(range(X.count(0)))
    if X.max_dim >= 1:
        for fs in X.faces[1]:
            ds.merge(fs[0].cell, fs[1].cell)
    return sorted(tuple(sorted(s)) for s in ds.subsets())


def enumerate_maps(X: SSet, Y: SSet, d: int, budget: int = 200_000) -> list[SimplicialMap]:
    """All simplicial maps from the ``d``-skeleton of ``X`` into ``Y``.

    Maps are listed lexicographically by the images of ``X``'s cells in
    dimension order, each image ranked by its position in ``Y.simplices``.
    """
    if d > X.max_dim or d > Y.max_dim:
        raise TruncationError(f"dimension {d} exceeds a truncation ({X.max_dim}, {Y.max_dim})")
    source = X.truncate(d)
    order = [(k, c) for k in range(d + 1) for c in range(source.count(k))]
    images: dict[tuple[int, int], Simplex] = {}
    out: list[SimplicialMap] = []
    visited = 0

    def image_of(s: Simplex) -> Simplex:
        return Y.apply(images[s.base_dim, s.cell], s.surj)

    def extend(p: int):
        nonlocal visited
        visited += 1
        if visited > budget:
            raise BudgetExceeded(f"map enumeration exceeded budget {budget}")
        if p == len(order):
            out.append(SimplicialMap(source, Y, tuple(
                tuple(images[k, c] for c in range(source.count(k))) for k in range(d + 1))))
            return
        k, c = order[p]
        if k == 0:
            cands = Y.simplices(0)
        else:
            need = [image_of(f) for f in source.faces[k][c]]
            cands = [y for y in Y.by_face(k, 0).get(need[0], [])
                     if all(Y.face(y, i) == need[i] for i in range(1, k + 1))]
        for y in cands:
            images[k, c] = y
            extend(p + 1)
        images.pop((k, c), None)

    extend(0)
    return out
