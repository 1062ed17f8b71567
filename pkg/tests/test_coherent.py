import itertools
from math import comb

import pytest

from simpcat import corpus
from simpcat.coherent import (coherent_nerve, homotopy_category, k_shriek_inclusion, k_shriek_nerve,
                              point_mapping_space, quasigroupoid_core, subsets_between, xi_category,
                              xi_mapping_space)
from simpcat.enriched.homotopy import pi0_vcat
from simpcat.enriched.vcat import discrete_vcategory
from simpcat.errors import InputError, TruncationError
from simpcat.fincat import find_isomorphism, iso_core, nerve
from simpcat.simpset import generator, is_kan_up_to, pi0


def boolean_chain_count(free: int, k: int) -> int:
    """Strict chains S_0 < ... < S_k of subsets of a ``free``-element set.

    Each element records the first index where it appears (or never); every
    index 1..k must be the first appearance of something.
    """
    return sum((-1) ** r * comb(k, r) * (k + 2 - r) ** free for r in range(k + 1))


def brute_chain_count(i, j, k):
    subsets = subsets_between(i, j)
    return sum(1 for combo in itertools.combinations(subsets, k + 1)
               if all(set(a) < set(b) for a, b in zip(combo, combo[1:])))


def test_chain_count_oracle_agrees_with_brute_force():
    for j in range(5):
        for k in range(j):
            assert boolean_chain_count(max(j - 1, 0), k) == brute_chain_count(0, j, k)


def test_xi_mapping_space_examples():
    assert xi_mapping_space(2, 0, 2).counts() == (2, 1)
    assert xi_mapping_space(3, 0, 3).counts() == (4, 5, 2)
    for n in range(4):
        for i in range(n + 1):
            assert xi_mapping_space(n, i, i).counts() == (1,)
    with pytest.raises(InputError):
        xi_mapping_space(2, 0, 3)


def test_xi_category_is_a_simplicial_category():
    for n in range(4):
        assert xi_category(n, 3).validate() == []


def test_coherent_nerve_low_dimensions():
    for name, K in corpus.kan_enriched():
        X = coherent_nerve(K, 2)
        assert X.count(0) == len(K.objects), name
        vertices = sum(K.homs[a, b].size(0) for a in range(len(K.objects)) for b in range(len(K.objects)))
        assert len(X.simplices(1)) == vertices, name
        assert X.validate() == []


def test_coherent_nerve_of_a_discrete_category_is_its_nerve():
    for name in ("Z2", "walking-arrow", "E2", "idempotent", "span"):
        C = corpus.category(name)
        assert coherent_nerve(discrete_vcategory(C), 3).canonical() == nerve(C, 3).canonical(), name


def test_kan_enriched_coherent_nerve_counts():
    # frozen from the construction; the low dimensions are checked independently above
    expected = {"Z3xBZ2": (1, 2, 13, 170), "arrowxBZ3": (2, 1, 8, 106), "E2xBZ2": (2, 2, 10, 90),
                "codiscrete-Z2": (1, 1, 5, 45), "codiscrete-parallel-pair": (2, 2, 4, 14),
                "codiscrete-idempotent": (1, 1, 5, 45)}
    for name, K in corpus.kan_enriched():
        assert coherent_nerve(K, 3).counts() == expected[name], name


def test_coherent_nerve_of_a_kan_enriched_category_is_a_quasicategory():
    from simpcat.simpset import is_quasicategory_up_to
    for name, K in corpus.kan_enriched():
        assert is_quasicategory_up_to(coherent_nerve(K, 3), 3).verdict, name


def test_homotopy_category_examples():
    H = homotopy_category(generator("standard", 1, max_dim=3))
    assert find_isomorphism(H.category, corpus.category("walking-arrow"))
    for name in ("S3", "square", "E2xIdem"):
        C = corpus.category(name)
        H = homotopy_category(nerve(C, 3))
        assert H.relation_is_equivalence
        assert find_isomorphism(H.category, C), name
    for name, K in corpus.kan_enriched():
        assert find_isomorphism(homotopy_category(coherent_nerve(K, 3)).category, pi0_vcat(K)), name


def test_homotopy_category_needs_two_dimensions():
    with pytest.raises(TruncationError):
        homotopy_category(generator("standard", 1))


def test_quasigroupoid_core_examples():
    assert quasigroupoid_core(nerve(corpus.category("walking-arrow"), 3)).counts() == (2, 0, 0, 0)
    Z3 = nerve(corpus.category("Z3"), 3)
    assert quasigroupoid_core(Z3).canonical() == Z3.canonical()
    assert quasigroupoid_core(generator("standard", 2)).counts() == (3, 0, 0)


def test_k_shriek_examples():
    assert k_shriek_nerve(corpus.category("walking-arrow"), 3).counts() == (2, 0, 0, 0)
    S3 = corpus.category("S3")
    assert k_shriek_nerve(S3, 3).canonical() == nerve(S3, 3).canonical()
    M = k_shriek_inclusion(corpus.category("Z2-arrow"), 3)
    assert M.validate() == []


@pytest.mark.parametrize("name", corpus.category_names())
def test_k_shriek_law(name):
    C = corpus.category(name)
    K = k_shriek_nerve(C, 3).canonical()
    assert K == nerve(iso_core(C), 3).canonical()
    assert K == quasigroupoid_core(nerve(C, 3)).canonical()


def test_point_mapping_space_examples():
    E2 = corpus.category("E2")
    X = point_mapping_space(discrete_vcategory(E2), 3)
    assert X.canonical() == nerve(E2, 3).canonical()
    assert len(pi0(X)) == 1
    Y = point_mapping_space(discrete_vcategory(corpus.category("walking-arrow")), 3)
    assert Y.counts() == (2, 0, 0, 0) and len(pi0(Y)) == 2


def test_point_mapping_space_of_kan_enriched_is_kan_in_low_dimensions():
    for name, K in corpus.kan_enriched():
        X = point_mapping_space(K, 2)
        assert is_kan_up_to(X, 2).verdict, name
