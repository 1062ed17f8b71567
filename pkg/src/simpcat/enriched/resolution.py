"""The free/forgetful comonad resolution of a finite category.

``F`` sends a category to the free category on its underlying graph with
identities dropped.  A morphism of level ``k`` (an arrow of ``F^{k+1} C``)
is ``(a, b, w)`` where ``w`` is a nested word of depth ``k + 1``: depth-1
words are tuples of non-identity morphism indices of ``C`` in path order,
depth ``d + 1`` words are tuples of non-empty depth-``d`` words.  The empty
word is the identity.

* ``phi`` composes one layer: concatenation, or composition in ``C`` at the bottom;
* ``psi`` wraps every letter as a singleton word;
* ``d_i = F^i phi F^{k-i}`` and ``s_i = F^i psi F^{k-i}``, where applying ``F``
  to a map applies it letterwise and drops letters that become identities.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator

from ..errors import InputError
from ..fincat import FinCategory

__all__ = ["Resolution", "ResolutionLevel", "comonad_resolution", "random_element"]

Element = tuple  # (a, b, nested word)


def _is_identity(C: FinCategory, w, depth: int) -> bool:
    if depth == 0:
        return C.is_identity(w)
    return w == ()


def _phi(C: FinCategory, w, depth: int):
    """Compose one layer of a depth-``depth`` word."""
    if depth == 1:
        if not w:
            raise InputError("cannot compose an empty bottom word without its object")
        m = w[0]
        for n in w[1:]:
            m = C.compose(n, m)
        return m
    return tuple(l for inner in w for l in inner)


def _psi(w, depth: int):
    return tuple((l,) for l in w)


@dataclass(frozen=True)
class ResolutionLevel:
    k: int
    morphisms: tuple
    truncated: bool


@dataclass(frozen=True, eq=False)
class Resolution:
    C: FinCategory
    k_max: int
    len_cap: int
    levels: tuple[ResolutionLevel, ...]

    # -- operators -------------------------------------------------------------

    def face(self, k: int, i: int, x: Element) -> Element:
        """``d_i: F^{k+1} C -> F^k C`` for ``0 <= i <= k``; ``k = 0`` lands in ``C`` itself."""
        if not 0 <= i <= k:
            raise InputError(f"face index {i} out of range at level {k}")
        a, b, w = x
        if k == 0:
            return (a, b, self.C.identities[a]) if w == () else (a, b, _phi(self.C, w, 1))
        return (a, b, self._map_at(w, k + 1, i, "phi"))

    def degeneracy(self, k: int, i: int, x: Element) -> Element:
        if not 0 <= i <= k:
            raise InputError(f"degeneracy index {i} out of range at level {k}")
        a, b, w = x
        return (a, b, self._map_at(w, k + 1, i, "psi"))

    def _map_at(self, w, depth: int, i: int, which: str):
        C = self.C
        if i == 0:
            if which == "psi":
                return _psi(w, depth)
            if not w:
                return ()
            return _phi(C, w, depth)
        out = []
        for l in w:
            r = self._map_at(l, depth - 1, i - 1, which)
            if which == "phi":
                # the layer that was composed disappears from the letter
                if _is_identity(C, r, depth - 2):
                    continue
            out.append(r)
        return tuple(out)

    def augmentation(self, k: int, x: Element) -> int:
        """``phi^{k+1}``: the composite in ``C``."""
        a, b, w = x
        for depth in range(k + 1, 1, -1):
            w = _phi(self.C, w, depth)
        return self.C.identities[a] if w == () else _phi(self.C, w, 1)

    def section(self, k: int, m: int) -> Element:
        """``(k+1)``-fold singleton wrapping; identities go to the empty word."""
        a, b = self.C.src(m), self.C.tgt(m)
        if self.C.is_identity(m):
            return (a, b, ())
        w = m
        for _ in range(k + 1):
            w = (w,)
        return (a, b, w)

    def compose(self, k: int, g: Element, f: Element) -> Element:
        if f[1] != g[0]:
            raise InputError("compose: morphisms are not composable")
        return (f[0], g[1], f[2] + g[2])

    def lower_compose(self, k: int, g, f):
        """Composition at level ``k - 1`` (in ``C`` when ``k = 0``)."""
        if k == 0:
            return (f[0], g[1], self.C.compose(g[2], f[2]))
        return self.compose(k - 1, g, f)

    # -- identities ------------------------------------------------------------

    def check(self, k: int, x: Element, y: Element | None = None) -> list[str]:
        """Every simplicial and section identity that applies to ``x`` at level ``k``."""
        d, s = self.face, self.degeneracy
        problems = []
        for j in range(k + 1):
            for i in range(j):
                if k >= 1 and d(k - 1, i, d(k, j, x)) != d(k - 1, j - 1, d(k, i, x)):
                    problems.append(f"d{i} d{j} != d{j - 1} d{i} at level {k} on {x}")
        for j in range(k + 1):
            sx = s(k, j, x)
            for i in range(k + 2):
                got = d(k + 1, i, sx)
                if i in (j, j + 1):
                    want = x
                elif i < j:
                    want = s(k - 1, j - 1, d(k, i, x))
                else:
                    want = s(k - 1, j, d(k, i - 1, x))
                if got != want:
                    problems.append(f"d{i} s{j} identity fails at level {k} on {x}")
            for i in range(j + 1):
                if s(k + 1, i, sx) != s(k + 1, j + 1, s(k, i, x)):
                    problems.append(f"s{i} s{j} != s{j + 1} s{i} at level {k} on {x}")
        eps = self.augmentation(k, x)
        for i in range(k + 1):
            if k >= 1 and self.augmentation(k - 1, d(k, i, x)) != eps:
                problems.append(f"augmentation not compatible with d{i} at level {k}")
        if y is not None and x[1] == y[0]:
            yx = self.compose(k, y, x)
            for i in range(k + 1):
                if d(k, i, yx) != self.lower_compose(k, d(k, i, y), d(k, i, x)):
                    problems.append(f"d{i} does not preserve composition at level {k}")
            for i in range(k + 1):
                if s(k, i, yx) != self.compose(k + 1, s(k, i, y), s(k, i, x)):
                    problems.append(f"s{i} does not preserve composition at level {k}")
        return problems

    def check_section(self, k: int, m: int) -> list[str]:
        problems = []
        sec = self.section(k, m)
        if self.augmentation(k, sec) != m:
            problems.append(f"phi o i != id on {self.C.name(m)} at level {k}")
        for i in range(k + 1):
            lower = self.section(k - 1, m) if k else (self.C.src(m), self.C.tgt(m), m)
            if self.face(k, i, sec) != lower:
                problems.append(f"d{i} o i_{k} != i_{k - 1} on {self.C.name(m)}")
        return problems


def _words(C: FinCategory, depth: int, a: int, budget: int) -> Iterator[tuple]:
    """Nested non-identity words from ``a`` with at most ``budget`` bottom letters: ``(word, end, weight)``."""
    if depth == 0:
        if budget >= 1:
            for m in C.out_of(a):
                if not C.is_identity(m):
                    yield m, C.tgt(m), 1
        return

    def seqs(at, left):
        yield (), at, 0
        for first, mid, wt in _words(C, depth - 1, at, left):
            if depth - 1 >= 1 and first == ():
                continue
            for rest, end, wt2 in seqs(mid, left - wt):
                yield (first,) + rest, end, wt + wt2

    yield from seqs(a, budget)


def comonad_resolution(C: FinCategory, k_max: int, len_cap: int) -> Resolution:
    problems = C.validate()
    if problems:
        raise InputError(problems[0])
    # words were cut off exactly when some non-identity chain is longer than the cap
    n_obj = len(C.objects)
    truncated = sum(1 for a in range(n_obj) for _ in _words(C, 1, a, len_cap + 1)) > \
        sum(1 for a in range(n_obj) for _ in _words(C, 1, a, len_cap))
    levels = []
    for k in range(k_max + 1):
        found = []
        for a in range(len(C.objects)):
            for w, b, wt in _words(C, k + 1, a, len_cap):
                found.append((a, b, w))
        levels.append(ResolutionLevel(k, tuple(found), truncated))
    return Resolution(C, k_max, len_cap, tuple(levels))


def random_element(C: FinCategory, k: int, rng: random.Random, max_letters: int = 3) -> Element:
    """A random level-``k`` morphism built by a random walk through ``C``."""
    a = rng.randrange(len(C.objects))

    def build(depth: int, at: int):
        if depth == 0:
            outs = [m for m in C.out_of(at) if not C.is_identity(m)]
            if not outs:
                return None, at
            m = rng.choice(outs)
            return m, C.tgt(m)
        letters = []
        for _ in range(rng.randint(1, max_letters)):
            sub, nxt = build(depth - 1, at)
            if sub is None or sub == ():
                break
            letters.append(sub)
            at = nxt
        return tuple(letters), at

    if rng.random() < 0.05:
        return (a, a, ())
    w, b = build(k + 1, a)
    return (a, b, w)
