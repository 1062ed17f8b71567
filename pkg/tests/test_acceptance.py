"""The twelve acceptance criteria, each under its time limit.

Each test records a one-line verdict that is printed in the terminal summary.
"""

import random
import time
from contextlib import contextmanager

import pytest

from simpcat import cli, corpus
from simpcat.coherent import (coherent_nerve, homotopy_category, k_shriek_nerve, point_mapping_space,
                              quasigroupoid_core, subsets_between, xi_mapping_space)
from simpcat.enriched.homotopy import groupoid_core, pi0_vcat
from simpcat.enriched.pushout import pushout_along_u, retraction_functor
from simpcat.enriched.resolution import comonad_resolution, random_element
from simpcat.enriched.vcat import discrete_vcategory
from simpcat.fincat import (check_localization_universal, find_isomorphism, fundamental_category,
                            is_groupoid, iso_core, nerve)
from simpcat.simpset import pi0

from conftest import ACCEPTANCE_LINES


@contextmanager
def criterion(number, title, limit):
    start = time.perf_counter()
    status = "FAIL"
    detail = ""
    try:
        yield
        elapsed = time.perf_counter() - start
        status = "PASS" if elapsed < limit else "FAIL"
        detail = f"{elapsed:.2f}s (limit {limit}s)"
        assert elapsed < limit, f"criterion {number} took {elapsed:.2f}s, limit {limit}s"
    finally:
        if not detail:
            detail = f"error after {time.perf_counter() - start:.2f}s"
        ACCEPTANCE_LINES.append(f"criterion {number}: {status}  {title}  {detail}")


def structured(argv):
    report, code, _ = cli.run(argv + ["--format", "structured"])
    return report, code


def test_1_groupoid_kan_correspondence():
    names = corpus.category_names()
    required = {"walking-arrow", "[2]", "Z2", "Z3", "E2", "E3", "loop-arrow"}
    assert len(names) >= 20 and required <= set(names)
    with criterion(1, "nerve is Kan exactly for groupoids", 10):
        for name in names:
            C = corpus.category(name)
            assert len(C.objects) <= 4 and len(C.morphisms) <= 12
            report, code = structured(["is-kan", f"nerve-of-{name}", "--max-dim", "3"])
            assert code in (0, 1), report
            assert (code == 0) == is_groupoid(C), name


def test_2_nerves_are_quasicategories_with_unique_fillers():
    with criterion(2, "corpus nerves have unique inner fillers", 10):
        for name in corpus.category_names():
            report, code = structured(["is-qcat", f"nerve-of-{name}", "--max-dim", "3"])
            assert code == 0, name
            assert report.counts["unique_fillers"] is True, name


def test_3_pushout_filtration_matches_oracle():
    instances = corpus.pushout_instances()
    assert len(instances) >= 10
    simplicial = [n for n, d in instances if not (d.S.discrete and d.T.discrete)]
    assert simplicial == ["horn-in-simplex"]
    for name, data in instances:
        assert len(data.C.objects) <= 3
        if data.S.discrete and data.T.discrete:
            assert data.S.size() <= 3 and data.T.size() <= 3
    with criterion(3, "pushout normal forms coincide with oracle classes", 60):
        for name, _ in instances:
            report, code = structured(["pushout", name, "--word-cap", "3", "--oracle"])
            assert code == 0, (name, report.witnesses)
            assert report.counts["oracle_agrees"] is True


def test_4_fundamental_category_of_nerve():
    with criterion(4, "tau of the nerve recovers the category", 5):
        for name, C in corpus.corpus_categories():
            T = fundamental_category(nerve(C, 3)).to_fincategory()
            assert find_isomorphism(T, C) is not None, name


def strict_chains(i, j, k):
    """Strict chains of length k + 1 in the poset of subsets of [i, j] containing both ends."""
    free = max(j - i - 1, 0)
    # inclusion-exclusion over which chain positions are left without a first appearance
    from math import comb
    return sum((-1) ** r * comb(k, r) * (k + 2 - r) ** free for r in range(k + 1))


def test_5_xi_mapping_space_counts():
    with criterion(5, "mapping spaces of the thickened simplex count strict chains", 5):
        assert xi_mapping_space(3, 0, 3).counts() == (4, 5, 2)
        for n in range(6):
            for i in range(n + 1):
                for j in range(i, n + 1):
                    X = xi_mapping_space(n, i, j)
                    expected = tuple(strict_chains(i, j, k) for k in range(X.max_dim + 1))
                    assert X.counts() == expected, (n, i, j)
                    assert X.count(0) == len(subsets_between(i, j))


def test_6_coherent_nerve_of_discrete_categories():
    with criterion(6, "coherent nerve of a discrete category is its nerve", 30):
        for name, C in corpus.corpus_categories():
            X = coherent_nerve(discrete_vcategory(C), 3)
            assert X.canonical() == nerve(C, 3).canonical(), name


def test_7_k_shriek_law():
    with criterion(7, "k-shriek nerve equals nerve of the core and the quasi-groupoid core", 30):
        for name, C in corpus.corpus_categories():
            K = k_shriek_nerve(C, 3).canonical()
            assert K == nerve(iso_core(C), 3).canonical(), name
            assert K == quasigroupoid_core(nerve(C, 3)).canonical(), name


def test_8_homotopy_category_laws():
    kan = corpus.kan_enriched()
    assert len(kan) >= 5
    with criterion(8, "homotopy categories recover C and the component category", 60):
        for name, C in corpus.corpus_categories():
            assert find_isomorphism(homotopy_category(nerve(C, 3)).category, C) is not None, name
        for name, K in kan:
            H = homotopy_category(coherent_nerve(K, 3))
            assert find_isomorphism(H.category, pi0_vcat(K)) is not None, name


def test_9_resolution_identities():
    rng = random.Random(2024)
    with criterion(9, "resolution identities on 1000 random nested words", 30):
        checked = 0
        for name in ("Z3", "square", "idempotent"):
            C = corpus.category(name)
            res = comonad_resolution(C, 3, 3)
            for m in range(len(C.morphisms)):
                for k in range(4):
                    assert res.check_section(k, m) == []
            for _ in range(334):
                k = rng.randint(0, 3)
                x = random_element(C, k, rng)
                y = random_element(C, k, rng)
                assert res.check(k, x, y if x[1] == y[0] else None) == [], (name, k, x, y)
                checked += 1
        assert checked >= 1000


def test_10_localization_universal_property():
    instances = corpus.localization_instances()
    targets = corpus.localization_targets()
    assert len(instances) >= 5
    with criterion(10, "every inverting functor factors exactly once", 120):
        for name, C, f in instances:
            for tname, D in targets:
                assert len(D.objects) <= 3 and len(D.morphisms) <= 9
                rep = check_localization_universal(C, [f], D)
                assert rep.verdict, (name, tname, rep.witness)


def iso_class_count(P):
    classes = {a: a for a in range(len(P.objects))}
    for m in range(len(P.morphisms)):
        if P.is_invertible(m):
            a, b = classes[P.src(m)], classes[P.tgt(m)]
            for k, v in classes.items():
                if v == b:
                    classes[k] = a
    return len(set(classes.values()))


def test_11_core_projection():
    cats = [(n, discrete_vcategory(C)) for n, C in corpus.corpus_categories()] + corpus.kan_enriched()
    with criterion(11, "core projection and components of the point mapping space", 30):
        for name, C in cats:
            P = pi0_vcat(C)
            assert find_isomorphism(pi0_vcat(groupoid_core(C)), iso_core(P)) is not None, name
            assert len(pi0(point_mapping_space(C, 2))) == iso_class_count(P), name


def test_12_retraction_propagation():
    instances = corpus.retraction_instances()
    assert len(instances) >= 5
    with criterion(12, "induced retraction splits the map out of C", 5):
        for name, data, r in instances:
            assert data.S.discrete and data.T.discrete
            result = pushout_along_u(data, 3)
            R, problems = retraction_functor(result, r)
            assert problems == [], name
            C = data.C
            for w in range(len(C.objects)):
                for z in range(len(C.objects)):
                    for e in C.homs[w, z].level(0):
                        assert R(0, w, z, (e,)) == e
