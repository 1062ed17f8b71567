"""Connected components of enriched categories, the groupoid core, and truncated W/F checks.

Mapping values are finite truncated simplicial sets, so weak equivalences
and fibrations are only visible through a truncation: every report here
carries the label ``"π₀-truncated"``.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field

from ..errors import InputError, TruncationError
from ..fincat import FinCategory
from .value import Value, ValueMap, chain_value, label_name, nerve_value
from .vcat import VCategory, VFunctor

__all__ = ["pi0_vcat", "pi0_index", "groupoid_core", "TruncatedReport", "is_weq_truncated",
           "is_fibration_truncated", "group_enriched", "codiscrete_enriched", "terminal_functor",
           "identity_vfunctor", "horn_lifting_failures"]

TRUNCATION_LABEL = "π₀-truncated"


def pi0_index(C: VCategory) -> tuple[FinCategory, dict]:
    """``π₀C`` and the map ``(a, b, vertex) -> morphism index``.

    A component is named by its first vertex; when two hom pairs share a
    label every name gets an ``a>b:`` prefix.
    """
    hit = C._cache.get("pi0")
    if hit is not None:
        return hit
    N = len(C.objects)
    morphisms, cls = [], {}
    for a in range(N):
        for b in range(N):
            v = C.homs[a, b]
            for comp in v.components():
                for x in comp:
                    cls[a, b, x] = len(morphisms)
                morphisms.append((label_name(comp[0]), a, b))
    counts = Counter(m[0] for m in morphisms)
    if any(c > 1 for c in counts.values()):
        morphisms = [(f"{C.objects[a]}>{C.objects[b]}:{name}", a, b) for name, a, b in morphisms]
    comp_table = {}
    for a in range(N):
        for b in range(N):
            for c in range(N):
                for f in C.homs[a, b].level(0):
                    for g in C.homs[b, c].level(0):
                        key = (cls[b, c, g], cls[a, b, f])
                        val = cls[a, c, C.compose(a, b, c, 0, g, f)]
                        old = comp_table.setdefault(key, val)
                        if old != val:
                            raise InputError(
                                f"induced composition on components is ill-defined at "
                                f"({morphisms[key[0]][0]}, {morphisms[key[1]][0]})")
    ids = tuple(cls[a, a, C.ids[a]] for a in range(N))
    hit = (FinCategory(C.objects, tuple(morphisms), ids, comp_table), cls)
    C._cache["pi0"] = hit
    return hit


def pi0_vcat(C: VCategory) -> FinCategory:
    return pi0_index(C)[0]


def groupoid_core(C: VCategory) -> VCategory:
    """Keep the components of each mapping value whose class is invertible in ``π₀C``."""
    P, cls = pi0_index(C)
    N = len(C.objects)
    homs = {}
    for a in range(N):
        for b in range(N):
            v = C.homs[a, b]
            keep = [k for k, comp in enumerate(v.components()) if P.is_invertible(cls[a, b, comp[0]])]
            homs[a, b] = v.restrict_components(keep)
    comp = {}
    for (a, b, c), tables in C.comp.items():
        new = []
        for n, table in enumerate(tables):
            fs, gs = set(homs[a, b].level(n)), set(homs[b, c].level(n))
            new.append({(g, f): gf for (g, f), gf in table.items() if f in fs and g in gs})
        comp[a, b, c] = tuple(new)
    return VCategory(C.objects, homs, comp, C.ids)


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class TruncatedReport:
    """``verdict`` is ``True``, ``False`` or ``None`` (inconclusive)."""

    verdict: bool | None
    failures: tuple[str, ...] = ()
    parts: dict = field(default_factory=dict)
    label: str = TRUNCATION_LABEL


def _pi0_map(F: VFunctor) -> tuple[dict, list[str]]:
    """Induced map on component classes, as ``class index -> class index``."""
    C, D = F.source, F.target
    PC, cC = pi0_index(C)
    PD, cD = pi0_index(D)
    out, problems = {}, []
    N = len(C.objects)
    for a in range(N):
        for b in range(N):
            for x in C.homs[a, b].level(0):
                img = cD[F.obj_map[a], F.obj_map[b], F(a, b, 0, x)]
                old = out.setdefault(cC[a, b, x], img)
                if old != img:
                    problems.append(f"map ({C.objects[a]}, {C.objects[b]}) is not constant on a component")
    return out, problems


def is_weq_truncated(F: VFunctor) -> TruncatedReport:
    """Bijection on components of every mapping value, and essential surjectivity of ``π₀F``."""
    C, D = F.source, F.target
    PC, _ = pi0_index(C)
    PD, _ = pi0_index(D)
    pmap, failures = _pi0_map(F)
    N = len(C.objects)
    for a in range(N):
        for b in range(N):
            src = PC.hom(a, b)
            tgt = PD.hom(F.obj_map[a], F.obj_map[b])
            img = [pmap[m] for m in src]
            if len(set(img)) != len(img) or set(img) != set(tgt):
                failures.append(f"components of Map({C.objects[a]}, {C.objects[b]}) -> "
                                f"Map({D.objects[F.obj_map[a]]}, {D.objects[F.obj_map[b]]}): "
                                f"{len(src)} -> {len(tgt)} not bijective")
    ff = not failures
    missing = []
    for d in range(len(D.objects)):
        if not any(PD.is_invertible(m) for a in range(N) for m in PD.hom(F.obj_map[a], d)):
            missing.append(D.objects[d])
    failures.extend(f"object {o} is not isomorphic to any image object" for o in missing)
    return TruncatedReport(not failures, tuple(failures),
                           {"fully_faithful": ff, "essentially_surjective": not missing})


def _horns(V: Value, n: int, i: int, candidates: list[list]):
    """Compatible horn tuples ``(y_j)_{j != i}`` with ``y_j`` drawn from ``candidates``."""
    idx = [j for j in range(n + 1) if j != i]
    for combo in itertools.product(*candidates):
        y = dict(zip(idx, combo))
        ok = True
        for a_, b_ in itertools.combinations(idx, 2):
            if n >= 2 and V.face(n - 1, y[b_], a_) != V.face(n - 1, y[a_], b_ - 1):
                ok = False
                break
        if ok:
            yield combo


def horn_lifting_failures(p: ValueMap, d: int, name: str = "") -> list[str]:
    """Horn lifting for ``p`` against ``Λⁿ_i ⊂ Δⁿ`` for ``1 <= n <= d``.

    For each target simplex ``z`` and each source horn over the horn of
    ``z``, some source simplex must fill the horn and map to ``z``.
    """
    S, T = p.source, p.target
    if S.discrete and T.discrete:
        return []
    for V in (S, T):
        if not V.discrete and V.dim < d:
            raise TruncationError(f"horn lifting up to dimension {d} needs levels the value truncates at {V.dim}")
    failures = []
    for n in range(1, d + 1):
        pre = {}
        for y in S.level(n - 1):
            pre.setdefault(p(n - 1, y), []).append(y)
        for i in range(n + 1):
            fill = {}
            for x in S.level(n):
                key = (p(n, x), tuple(S.face(n, x, j) for j in range(n + 1) if j != i))
                fill[key] = x
            for z in T.level(n):
                want = [pre.get(T.face(n, z, j), []) for j in range(n + 1) if j != i]
                for horn in _horns(S, n, i, want):
                    if (z, horn) not in fill:
                        failures.append(f"{name}no lift of {label_name(z)} against Lambda^{n}_{i} "
                                        f"over horn {tuple(label_name(h) for h in horn)}")
                        break
    return failures


def is_fibration_truncated(F: VFunctor, d: int) -> TruncatedReport:
    """Horn lifting on mapping values up to ``d`` (FT1), and lifting of invertible classes (FT2)."""
    C, D = F.source, F.target
    N = len(C.objects)
    ft1: bool | None = True
    failures: list[str] = []
    try:
        for a in range(N):
            for b in range(N):
                p = F.maps[a, b]
                failures.extend(horn_lifting_failures(
                    _extended(p, d), d, f"Map({C.objects[a]}, {C.objects[b]}): "))
    except TruncationError as exc:
        ft1 = None
        failures.append(str(exc))
    if ft1 is not None:
        ft1 = not failures

    PC, _ = pi0_index(C)
    PD, _ = pi0_index(D)
    pmap, problems = _pi0_map(F)
    failures.extend(problems)
    ft2 = not problems
    for a in range(N):
        fa = F.obj_map[a]
        for e in PD.out_of(fa):
            if not PD.is_invertible(e):
                continue
            b = PD.tgt(e)
            lifted = any(F.obj_map[PC.tgt(m)] == b and PC.is_invertible(m) and pmap[m] == e
                         for m in PC.out_of(a))
            if not lifted:
                ft2 = False
                failures.append(f"invertible {PD.name(e)}: {D.objects[fa]} -> {D.objects[b]} "
                                f"has no invertible lift out of {C.objects[a]}")
    verdict = None if ft1 is None and ft2 else (bool(ft1) and ft2)
    return TruncatedReport(verdict, tuple(failures), {"FT1": ft1, "FT2": ft2})


def _extended(p: ValueMap, d: int) -> ValueMap:
    """The same map with a discrete end spelled out to level ``d`` (labels are unchanged)."""
    S, T = p.source, p.target
    if S.discrete == T.discrete:
        return p
    for V in (S, T):
        if not V.discrete and V.dim < d:
            raise TruncationError(f"horn lifting up to dimension {d} needs levels the value truncates at {V.dim}")
    return ValueMap.from_function(S.extend_to(d) if S.discrete else S,
                                  T.extend_to(d) if T.discrete else T, p, d)


# ---------------------------------------------------------------------------
# functors


def identity_vfunctor(C: VCategory) -> VFunctor:
    N = len(C.objects)
    maps = {(a, b): ValueMap.from_function(C.homs[a, b], C.homs[a, b], lambda n, x: x)
            for a in range(N) for b in range(N)}
    return VFunctor(C, C, tuple(range(N)), maps)


def terminal_functor(C: VCategory) -> VFunctor:
    from .vcat import terminal_vcategory
    T = terminal_vcategory()
    N = len(C.objects)
    maps = {(a, b): ValueMap.from_function(C.homs[a, b], T.homs[0, 0], lambda n, x: "id_*")
            for a in range(N) for b in range(N)}
    return VFunctor(C, T, (0,) * N, maps)


# ---------------------------------------------------------------------------
# Kan-enriched categories: mapping values are nerves of finite groupoids


def group_enriched(C: FinCategory, A: FinCategory, dim: int = 3) -> VCategory:
    """``hom(a, b) = C(a, b) x BA`` for a finite abelian group ``A``, composed pointwise."""
    if len(A.objects) != 1 or not all(A.is_invertible(m) for m in range(len(A.morphisms))):
        raise InputError("group_enriched: A must be a one-object groupoid")
    for g in range(len(A.morphisms)):
        for h in range(len(A.morphisms)):
            if A.compose(g, h) != A.compose(h, g):
                raise InputError("group_enriched: A must be abelian for pointwise composition")
    BA = nerve_value(A, dim)
    N = len(C.objects)
    homs = {(a, b): Value.from_set(C.name(m) for m in C.hom(a, b)).product(BA)
            for a in range(N) for b in range(N)}

    def mult(x, y):
        if isinstance(x, str):
            return x
        return tuple(A.name(A.compose(A.mor(s), A.mor(t))) for s, t in zip(x, y))

    def compose(a, b, c, n, g, f):
        return (C.name(C.compose(C.mor(g[0]), C.mor(f[0]))), mult(g[1], f[1]))

    ids = tuple((C.name(i), A.objects[0]) for i in C.identities)
    return VCategory.from_function(C.objects, homs, ids, compose, dim)


def codiscrete_enriched(C: FinCategory, dim: int = 3) -> VCategory:
    """``hom(a, b)`` is the nerve of the indiscrete groupoid on ``C(a, b)``; composition is pointwise."""
    N = len(C.objects)
    homs = {(a, b): chain_value([C.name(m) for m in C.hom(a, b)], lambda s, t: True, dim)
            for a in range(N) for b in range(N)}

    def compose(a, b, c, n, g, f):
        return tuple(C.name(C.compose(C.mor(s), C.mor(t))) for s, t in zip(g, f))

    ids = tuple((C.name(i),) for i in C.identities)
    return VCategory.from_function(C.objects, homs, ids, compose, dim)
