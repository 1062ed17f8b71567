"""Pushout of an enriched category along ``U(S) -> U(T)``.

Attaching data: a category ``C``, objects ``x, y`` of ``C``, an injective
map ``f: S -> T`` and a map ``h: S -> Map_C(x, y)``.  The pushout ``D`` has
the objects of ``C``; a morphism ``w -> z`` at level ``n`` is a word

    (s0, t1, s1, ..., tk, sk)     meaning  s0 o t1 o s1 o ... o tk o sk

with every ``t`` in ``T_n`` minus the image of ``S_n``, ``s0`` in
``Map(y, z)``, middle letters in ``Map(y, x)`` and ``sk`` in ``Map(w, x)``
(``k = 0`` words are plain elements of ``Map(w, z)``).  A letter ``t = f(s)``
is contracted away by composing ``s_{j-1} o h(s) o s_j``.  ``k`` is the
filtration degree; everything is enumerated up to ``word_cap``.

:func:`pushout_oracle` recomputes the hom-sets independently as congruence
classes of paths in a presented category, one level at a time.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Hashable, Sequence

from ..errors import InputError
from ..fincat import PresentedCategory, Quiver
from ..rewriting import shortlex
from .value import Value, ValueMap
from .vcat import VCategory, VFunctor

__all__ = ["Attaching", "FiltrationLevel", "PushoutResult", "pushout_along_u", "pushout_oracle",
           "OracleResult", "canonical_path", "compare_with_oracle", "Retraction", "retraction_functor"]


@dataclass(frozen=True, eq=False)
class Attaching:
    C: VCategory
    S: Value
    T: Value
    f: ValueMap
    x: int
    y: int
    h: ValueMap

    @classmethod
    def from_functor(cls, f: ValueMap, H: VFunctor) -> "Attaching":
        """Read ``h`` off a functor ``U(S) -> C`` (objects ``x = 0``, ``y = 1`` of ``U(S)``)."""
        return cls(H.target, f.source, f.target, f, H.obj_map[0], H.obj_map[1], H.maps[0, 1])

    def levels(self) -> int:
        dims = [v.dim for v in (self.S, self.T) if not v.discrete]
        if not self.C.discrete:
            dims.append(self.C.dim)
        return min(dims) if dims else 0

    def validate(self) -> list[str]:
        problems = []
        n_obj = len(self.C.objects)
        if not (0 <= self.x < n_obj and 0 <= self.y < n_obj):
            return ["attach: x or y is not an object"]
        top = self.levels()
        problems.extend("attach f: " + p for p in self.f.validate(top))
        problems.extend("attach h: " + p for p in self.h.validate(top))
        for n in range(top + 1):
            for s in self.S.level(n):
                if not self.C.homs[self.x, self.y].contains(n, self.h(n, s)):
                    problems.append(f"attach h: image of {s!r} is not in Map(x, y)")
        for n in range(top + 1):
            images = [self.f(n, s) for s in self.S.level(n)]
            if len(set(images)) != len(images):
                problems.append(f"attach f: not injective at level {n}")
        return problems


@dataclass(frozen=True)
class FiltrationLevel:
    k: int
    forms: tuple          # normal forms of degree <= k
    new: tuple            # normal forms of degree exactly k


@dataclass(frozen=True, eq=False)
class PushoutResult:
    """Capped hom-sets of the pushout, per level ``n`` and pair ``(w, z)``."""

    data: Attaching
    word_cap: int
    dim: int
    homs: dict[tuple[int, int, int], tuple]          # (n, w, z) -> normal forms, by degree
    filtration: dict[tuple[int, int, int], tuple]    # (n, w, z) -> FiltrationLevel list
    stabilized: bool
    _cache: dict = field(default_factory=dict, repr=False)

    # letters of a word: even positions are C-elements, odd positions T-elements

    @staticmethod
    def degree(word: tuple) -> int:
        return len(word) // 2

    def _fS(self, n: int) -> dict:
        key = ("fS", n)
        hit = self._cache.get(key)
        if hit is None:
            hit = self._cache[key] = {self.data.f(n, s): s for s in self.data.S.level(n)}
        return hit

    def contract(self, n: int, w: int, z: int, word: Sequence, order: str = "left",
                 rng: random.Random | None = None) -> tuple:
        """Remove every ``T``-letter in the image of ``S`` (order selectable for confluence tests)."""
        return contract_word(self.data, n, w, z, tuple(word), self._fS(n), order, rng)

    def compose(self, n: int, a: int, b: int, c: int, g: tuple, f: tuple) -> tuple | None:
        """``g o f`` for ``f: a -> b`` and ``g: b -> c``; ``None`` beyond the cap."""
        f_src = self.data.y if len(f) > 1 else a
        g_tgt = self.data.x if len(g) > 1 else c
        joint = self.data.C.compose(f_src, b, g_tgt, n, g[-1], f[0])
        out = g[:-1] + (joint,) + f[1:]
        return out if self.degree(out) <= self.word_cap else None

    def face(self, n: int, w: int, z: int, word: tuple, i: int) -> tuple:
        """Letterwise face, then contraction."""
        word = apply_letterwise(self.data, n, w, z, word, lambda V, m, e: V.face(m, e, i))
        return self.contract(n - 1, w, z, word)

    def degeneracy(self, n: int, w: int, z: int, word: tuple, i: int) -> tuple:
        return apply_letterwise(self.data, n, w, z, word, lambda V, m, e: V.degeneracy(m, e, i))

    def counts(self, n: int = 0) -> dict[tuple[str, str], int]:
        objs = self.data.C.objects
        return {(objs[w], objs[z]): len(self.homs[n, w, z])
                for w in range(len(objs)) for z in range(len(objs))}

    def as_value(self, w: int, z: int) -> Value:
        """``Map_D(w, z)`` capped at ``word_cap`` as a (simplicial) value."""
        if self.dim == 0 and self.data.C.discrete and self.data.S.discrete and self.data.T.discrete:
            return Value.from_set(self.homs[0, w, z])
        levels = tuple(self.homs[n, w, z] for n in range(self.dim + 1))
        faces = tuple({} if n == 0 else {
            word: tuple(self.face(n, w, z, word, i) for i in range(n + 1)) for word in levels[n]}
            for n in range(self.dim + 1))
        degens = tuple({} if n == self.dim else {
            word: tuple(self.degeneracy(n, w, z, word, i) for i in range(n + 1)) for word in levels[n]}
            for n in range(self.dim + 1))
        return Value(self.dim, levels, faces, degens, False)


def _slot_objects(data: Attaching, w: int, z: int, k: int) -> list[tuple[int, int]]:
    """``(src, tgt)`` of the C-letters of a degree-``k`` word ``w -> z``."""
    x, y = data.x, data.y
    if k == 0:
        return [(w, z)]
    return [(y, z)] + [(y, x)] * (k - 1) + [(w, x)]


def apply_letterwise(data: Attaching, n: int, w: int, z: int, word: tuple, op) -> tuple:
    k = len(word) // 2
    slots = _slot_objects(data, w, z, k)
    out = []
    for pos, e in enumerate(word):
        if pos % 2 == 0:
            out.append(op(data.C.homs[slots[pos // 2]], n, e))
        else:
            out.append(op(data.T, n, e))
    return tuple(out)


def contract_word(data: Attaching, n: int, w: int, z: int, word: tuple, fS: dict, order: str = "left",
                  rng: random.Random | None = None) -> tuple:
    C, x, y = data.C, data.x, data.y
    while True:
        spots = [p for p in range(1, len(word), 2) if word[p] in fS]
        if not spots:
            return word
        if order == "left":
            p = spots[0]
        elif order == "right":
            p = spots[-1]
        else:
            p = (rng or random).choice(spots)
        k = len(word) // 2
        slots = _slot_objects(data, w, z, k)
        left, right = word[p - 1], word[p + 1]
        left_src_tgt, right_src_tgt = slots[(p - 1) // 2], slots[(p + 1) // 2]
        hs = data.h(n, fS[word[p]])
        # right: r -> x, hs: x -> y, left: y -> l
        r_obj, l_obj = right_src_tgt[0], left_src_tgt[1]
        inner = C.compose(r_obj, x, y, n, hs, right)
        merged = C.compose(r_obj, y, l_obj, n, left, inner)
        word = word[:p - 1] + (merged,) + word[p + 2:]


def pushout_along_u(data: Attaching, word_cap: int) -> PushoutResult:
    problems = data.validate()
    if problems:
        raise InputError(problems[0])
    C, x, y = data.C, data.x, data.y
    N = len(C.objects)
    top = data.levels()
    homs, filtration = {}, {}
    new_at_cap = False
    for n in range(top + 1):
        image = {data.f(n, s) for s in data.S.level(n)}
        fresh = [t for t in data.T.level(n) if t not in image]
        for w in range(N):
            for z in range(N):
                levels, forms = [], []
                for k in range(word_cap + 1):
                    slots = _slot_objects(data, w, z, k)
                    pools = []
                    for i, (a, b) in enumerate(slots):
                        pools.append(C.homs[a, b].level(n))
                        if i < k:
                            pools.append(fresh)
                    # order pools as s0, t1, s1, ..., tk, sk
                    new = tuple(itertools.product(*pools)) if all(pools) else ()
                    forms.extend(new)
                    levels.append(FiltrationLevel(k, tuple(forms), new))
                    if k == word_cap and new:
                        new_at_cap = True
                homs[n, w, z] = tuple(forms)
                filtration[n, w, z] = tuple(levels)
    empty_back = C.homs[y, x].is_empty()
    nothing_new = all(len(data.T.level(n)) == len(data.S.level(n)) for n in range(top + 1))
    stabilized = (not new_at_cap) and (empty_back or nothing_new)
    return PushoutResult(data, word_cap, top, homs, filtration, stabilized)


# ---------------------------------------------------------------------------
# oracle


@dataclass(frozen=True, eq=False)
class OracleResult:
    """Per level: the presented category and its class representatives with at most ``cap`` T-letters."""

    presentations: tuple[PresentedCategory, ...]
    letters: tuple[dict, ...]          # level -> {code: ("C", a, b, elem) | ("T", elem)}
    classes: dict[tuple[int, int, int], tuple]   # (n, w, z) -> representative paths
    len_cap: int

    def counts(self, n: int = 0) -> dict[tuple[int, int], int]:
        return {(w, z): len(v) for (m, w, z), v in self.classes.items() if m == n}


def pushout_oracle(data: Attaching, word_cap: int, budget: int = 500_000) -> OracleResult:
    """Congruence classes of paths: C's non-identities and T's letters as generators."""
    problems = data.validate()
    if problems:
        raise InputError(problems[0])
    C, x, y = data.C, data.x, data.y
    N = len(C.objects)
    top = data.levels()
    len_cap = 2 * word_cap + 1
    presentations, letter_maps, classes = [], [], {}
    for n in range(top + 1):
        edges, info = [], {}
        code_of: dict[tuple, int] = {}
        for a in range(N):
            for b in range(N):
                ident = C.identity(a, n) if a == b else None
                for e in C.homs[a, b].level(n):
                    if e == ident:
                        continue
                    code_of["C", a, b, e] = 2 * len(edges)
                    info[2 * len(edges)] = ("C", a, b, e)
                    edges.append((f"c{len(edges)}", a, b))
        for t in data.T.level(n):
            code_of["T", t] = 2 * len(edges)
            info[2 * len(edges)] = ("T", t)
            edges.append((f"t{len(edges)}", x, y))

        def c_path(a, b, e):
            if a == b and e == C.identity(a, n):
                return (a, a, ())
            return (a, b, (code_of["C", a, b, e],))

        relations = []
        for a in range(N):
            for b in range(N):
                for c in range(N):
                    for f_ in C.homs[a, b].level(n):
                        if a == b and f_ == C.identity(a, n):
                            continue
                        for g in C.homs[b, c].level(n):
                            if b == c and g == C.identity(b, n):
                                continue
                            lhs = (a, c, c_path(a, b, f_)[2] + c_path(b, c, g)[2])
                            relations.append((lhs, c_path(a, c, C.compose(a, b, c, n, g, f_))))
        for s in data.S.level(n):
            relations.append(((x, y, (code_of["T", data.f(n, s)],)), c_path(x, y, data.h(n, s))))
        P = PresentedCategory(Quiver(C.objects, tuple(edges)), tuple(relations), frozenset())
        cc = P.closure(len_cap, budget)
        for w in range(N):
            for z in range(N):
                reps = [p for p in cc.classes(w, z)
                        if sum(1 for l in p[2] if info[l][0] == "T") <= word_cap]
                classes[n, w, z] = tuple(reps)
        presentations.append(P)
        letter_maps.append(info)
    return OracleResult(tuple(presentations), tuple(letter_maps), classes, len_cap)


def canonical_path(result: PushoutResult, oracle: OracleResult, n: int, w: int, z: int, word: tuple) -> tuple:
    """Path of a normal form in the oracle's alphabet: ``(sk, tk, ..., t1, s0)``, identities dropped."""
    info = oracle.letters[n]
    code = {v: k for k, v in info.items()}
    C = result.data.C
    k = len(word) // 2
    slots = _slot_objects(result.data, w, z, k)
    letters = []
    for pos in range(len(word) - 1, -1, -1):
        e = word[pos]
        if pos % 2 == 0:
            a, b = slots[pos // 2]
            if a == b and e == C.identity(a, n):
                continue
            letters.append(code["C", a, b, e])
        else:
            letters.append(code["T", e])
    return (w, z, tuple(letters))


def compare_with_oracle(result: PushoutResult, oracle: OracleResult) -> list[str]:
    """Differences between the normal forms and the oracle classes (empty when they agree)."""
    problems = []
    for (n, w, z), words in result.homs.items():
        mine = sorted((canonical_path(result, oracle, n, w, z, word) for word in words),
                      key=lambda p: shortlex(p[2]))
        theirs = sorted(oracle.classes[n, w, z], key=lambda p: shortlex(p[2]))
        if mine != theirs:
            objs = result.data.C.objects
            problems.append(f"level {n} Map({objs[w]}, {objs[z]}): {len(mine)} normal forms, "
                            f"{len(theirs)} oracle classes")
    return problems


# ---------------------------------------------------------------------------
# retractions


@dataclass(frozen=True, eq=False)
class Retraction:
    """The functor ``D -> C`` induced by ``r: T -> S`` with ``r o f = id``."""

    result: PushoutResult
    r: ValueMap

    def __call__(self, n: int, w: int, z: int, word: tuple) -> Hashable:
        data = self.result.data
        C, x, y = data.C, data.x, data.y
        k = len(word) // 2
        slots = _slot_objects(data, w, z, k)
        # fold from the right: acc: w -> current object
        acc = word[-1]
        for j in range(k, 0, -1):
            t = word[2 * j - 1]
            hs = data.h(n, self.r(n, t))
            acc = C.compose(w, x, y, n, hs, acc)
            left = word[2 * j - 2]
            a, b = slots[j - 1]
            acc = C.compose(w, a, b, n, left, acc)
        return acc


def retraction_functor(result: PushoutResult, r: ValueMap) -> tuple[Retraction, list[str]]:
    """The induced ``D -> C`` and the list of violated laws (empty when all hold).

    Checked: ``r o f = id``; ``(D -> C) o (C -> D) = id`` elementwise;
    preservation of every composite that stays under the cap; and each
    ``T``-letter going to ``h(r(t))``.
    """
    data = result.data
    C = data.C
    R = Retraction(result, r)
    problems = []
    top = result.dim
    for n in range(top + 1):
        for s in data.S.level(n):
            if r(n, data.f(n, s)) != s:
                problems.append(f"level {n}: r(f({s!r})) != {s!r}")
    N = len(C.objects)
    for n in range(top + 1):
        for w in range(N):
            for z in range(N):
                for e in C.homs[w, z].level(n):
                    if R(n, w, z, (e,)) != e:
                        problems.append(f"level {n}: C-element {e!r} not fixed by the retraction")
        for t in data.T.level(n):
            word = result.contract(n, data.x, data.y,
                                   (data.C.identity(data.y, n), t, data.C.identity(data.x, n)))
            if R(n, data.x, data.y, word) != data.h(n, r(n, t)):
                problems.append(f"level {n}: T-letter {t!r} not sent to h(r(t))")
        for a in range(N):
            for b in range(N):
                for c in range(N):
                    for f_ in result.homs[n, a, b]:
                        for g in result.homs[n, b, c]:
                            gf = result.compose(n, a, b, c, g, f_)
                            if gf is None:
                                continue
                            if R(n, a, c, gf) != C.compose(a, b, c, n, R(n, b, c, g), R(n, a, b, f_)):
                                problems.append(f"level {n}: composite not preserved")
    return R, problems
