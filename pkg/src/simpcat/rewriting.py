"""Word problems for categories presented by generators and relations.

A path is ``(src, tgt, letters)`` with letters (integer codes) listed in
path order, so ``(e1, e2)`` means "first e1, then e2".  Two engines:

* :class:`CongruenceClosure` -- union-find over every path of length at
  most a cap, merging ``p.u.q ~ p.v.q`` for each relation ``u ~ v`` whenever
  both sides fit under the cap.  Always terminates; identifications needing
  a detour through longer paths are missed, so answers are cap-relative.
* :func:`knuth_bendix` -- completion under shortlex order.  When it
  finishes inside its budget the result is a confluent, terminating system
  and normal forms are exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from scipy.cluster.hierarchy import DisjointSet

from .errors import BudgetExceeded

Path = tuple  # (src, tgt, letters)


def shortlex(word: Sequence[int]) -> tuple:
    return (len(word), tuple(word))


def concat(*paths: Path) -> Path:
    letters = tuple(l for p in paths for l in p[2])
    return (paths[0][0], paths[-1][1], letters)


class CongruenceClosure:
    """Length-capped congruence on the paths of a typed alphabet."""

    def __init__(self, n_objects: int, ends: dict[int, tuple[int, int]],
                 relations: Iterable[tuple[Path, Path]], len_cap: int, budget: int = 500_000):
        self.n_objects = n_objects
        self.ends = dict(ends)
        self.len_cap = len_cap
        out_by: dict[int, list[list[Path]]] = {a: [[(a, a, ())]] for a in range(n_objects)}
        in_by: dict[int, list[list[Path]]] = {a: [[(a, a, ())]] for a in range(n_objects)}
        letters_from: dict[int, list[int]] = {a: [] for a in range(n_objects)}
        for code in sorted(self.ends):
            letters_from[self.ends[code][0]].append(code)
        layer = [(a, a, ()) for a in range(n_objects)]
        total = len(layer)
        self.paths: list[Path] = list(layer)
        for k in range(1, len_cap + 1):
            nxt = []
            for p in layer:
                for code in letters_from[p[1]]:
                    nxt.append((p[0], self.ends[code][1], p[2] + (code,)))
            total += len(nxt)
            if total > budget:
                raise BudgetExceeded(f"congruence closure: more than {budget} paths below len-cap {len_cap}")
            for a in range(n_objects):
                out_by[a].append([])
                in_by[a].append([])
            for p in nxt:
                out_by[p[0]][k].append(p)
                in_by[p[1]][k].append(p)
            self.paths.extend(nxt)
            layer = nxt
        uf = DisjointSet(self.paths)
        for u, v in relations:
            m = max(len(u[2]), len(v[2]))
            for lp in range(0, len_cap - m + 1):
                for p in in_by[u[0]][lp]:
                    for lq in range(0, len_cap - m - lp + 1):
                        for q in out_by[u[1]][lq]:
                            uf.merge(concat(p, u, q), concat(p, v, q))
        self._rep: dict[Path, Path] = {}
        self._classes: dict[tuple[int, int], list[Path]] = {}
        for subset in uf.subsets():
            rep = min(subset, key=lambda p: shortlex(p[2]))
            for p in subset:
                self._rep[p] = rep
            self._classes.setdefault((rep[0], rep[1]), []).append(rep)
        for reps in self._classes.values():
            reps.sort(key=lambda p: shortlex(p[2]))

    def rep(self, path: Path) -> Path | None:
        """Shortlex-least path in the class of ``path`` (``None`` beyond the cap)."""
        return self._rep.get(path)

    def same(self, p: Path, q: Path) -> bool:
        rp = self._rep.get(p)
        return rp is not None and rp == self._rep.get(q)

    def classes(self, a: int, b: int) -> list[Path]:
        return list(self._classes.get((a, b), []))

    def class_of(self, rep: Path) -> list[Path]:
        return sorted((p for p, r in self._rep.items() if r == rep), key=lambda p: shortlex(p[2]))


@dataclass
class RewritingSystem:
    """Oriented rules ``lhs -> rhs`` with ``rhs`` shortlex-below ``lhs``."""

    rules: dict[tuple[int, ...], tuple[int, ...]]
    confluent: bool = True
    _lengths: list[int] = field(default_factory=list, repr=False)

    def __post_init__(self):
        self._lengths = sorted({len(l) for l in self.rules})

    def find_redex(self, word: Sequence[int]) -> tuple[int, tuple[int, ...]] | None:
        for start in range(len(word)):
            for n in self._lengths:
                if start + n > len(word):
                    break
                piece = tuple(word[start:start + n])
                if piece in self.rules:
                    return start, piece
        return None

    def normalize(self, word: Sequence[int]) -> tuple[int, ...]:
        word = tuple(word)
        while True:
            hit = self.find_redex(word)
            if hit is None:
                return word
            start, lhs = hit
            word = word[:start] + self.rules[lhs] + word[start + len(lhs):]

    def is_irreducible(self, word: Sequence[int]) -> bool:
        return self.find_redex(word) is None

    def irreducible_extension(self, word: tuple[int, ...], letter: int) -> bool:
        """Whether ``word + (letter,)`` is irreducible, given ``word`` is."""
        extended = word + (letter,)
        for n in self._lengths:
            if n > len(extended):
                break
            if extended[-n:] in self.rules:
                return False
        return True


def _critical_pairs(l1, r1, l2, r2):
    out = []
    # suffix of l1 overlaps prefix of l2
    for k in range(1, min(len(l1), len(l2)) + 1):
        if l1[-k:] == l2[:k]:
            out.append((r1 + l2[k:], l1[:-k] + r2))
    # l2 inside l1
    n = len(l2)
    for p in range(0, len(l1) - n + 1):
        if l1[p:p + n] == l2:
            out.append((r1, l1[:p] + r2 + l1[p + n:]))
    return out


def knuth_bendix(equations: Iterable[tuple[Sequence[int], Sequence[int]]], max_rules: int = 200,
                 max_steps: int = 20_000) -> RewritingSystem:
    """Complete ``equations`` under shortlex; raises :class:`BudgetExceeded` on overrun."""
    rules: dict[tuple[int, ...], tuple[int, ...]] = {}
    system = RewritingSystem(rules)
    pending = [(tuple(a), tuple(b)) for a, b in equations]
    steps = 0
    while pending:
        steps += 1
        if steps > max_steps:
            raise BudgetExceeded(f"Knuth-Bendix completion exceeded {max_steps} steps")
        a, b = pending.pop(0)
        a, b = system.normalize(a), system.normalize(b)
        if a == b:
            continue
        lhs, rhs = (a, b) if shortlex(a) > shortlex(b) else (b, a)
        # interreduce: rules whose lhs contains the new lhs are retired
        retired = []
        for l, r in list(rules.items()):
            if _contains(l, lhs):
                retired.append((l, r))
                del rules[l]
        rules[lhs] = rhs
        system = RewritingSystem(rules)
        for l in list(rules):
            rules[l] = system.normalize(rules[l]) if l != lhs else rhs
        system = RewritingSystem(rules)
        pending.extend(retired)
        if len(rules) > max_rules:
            raise BudgetExceeded(f"Knuth-Bendix completion exceeded {max_rules} rules")
        for l, r in list(rules.items()):
            pending.extend(_critical_pairs(lhs, rhs, l, r))
            if l != lhs:
                pending.extend(_critical_pairs(l, r, lhs, rhs))
    return RewritingSystem(dict(rules))


def _contains(word: tuple, piece: tuple) -> bool:
    n = len(piece)
    return any(word[p:p + n] == piece for p in range(len(word) - n + 1))


def irreducible_paths(system: RewritingSystem, ends: dict[int, tuple[int, int]], src: int,
                      len_cap: int) -> list[Path]:
    """All irreducible paths from ``src`` of length at most ``len_cap``, in shortlex order."""
    letters_from: dict[int, list[int]] = {}
    for code in sorted(ends):
        letters_from.setdefault(ends[code][0], []).append(code)
    out = [(src, src, ())]
    layer = [(src, src, ())]
    for _ in range(len_cap):
        nxt = []
        for p in layer:
            for code in letters_from.get(p[1], []):
                if system.irreducible_extension(p[2], code):
                    nxt.append((p[0], ends[code][1], p[2] + (code,)))
        out.extend(nxt)
        layer = nxt
        if not layer:
            break
    return sorted(out, key=lambda p: shortlex(p[2]))


def irreducible_is_finite(system: RewritingSystem, ends: dict[int, tuple[int, int]], n_objects: int,
                          len_cap: int) -> bool:
    """``True`` when no irreducible path has length ``len_cap`` (so none is longer)."""
    for a in range(n_objects):
        if any(len(p[2]) == len_cap for p in irreducible_paths(system, ends, a, len_cap)):
            return False
    return True
