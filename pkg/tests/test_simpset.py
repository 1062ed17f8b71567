import itertools
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from simpcat.errors import InputError, TruncationError
from simpcat.simpset import (Poset, Simplex, SimplicialMap, SSet, enumerate_maps, find_fillers, generator,
                             is_kan_up_to, is_quasicategory_up_to, nerve_of_poset, pi0, surjections)


def test_standard_simplex_counts_are_binomial():
    for n in range(5):
        X = generator("standard", n)
        assert X.counts() == tuple(comb(n + 1, k + 1) for k in range(n + 1))
        assert X.validate() == []


def test_boundary_and_horn_drop_the_right_cells():
    assert generator("boundary", 2).counts() == (3, 3, 0)
    H = generator("horn", 3, 1)
    assert H.counts() == (4, 6, 3, 0)
    assert "023" not in H.names[2]
    assert "123" in H.names[2]


def test_generator_rejects_bad_input():
    with pytest.raises(InputError):
        generator("simplex", 1)
    with pytest.raises(InputError):
        generator("horn", 2, 3)


def test_face_and_degeneracy_identities_on_delta3():
    X = generator("standard", 3)
    for n in range(2, 4):
        for x in X.simplices(n):
            for j in range(n + 1):
                for i in range(j):
                    assert X.face(X.face(x, j), i) == X.face(X.face(x, i), j - 1)
    for n in range(0, 2):
        for x in X.simplices(n):
            for j in range(n + 1):
                sx = X.degeneracy(x, j)
                assert X.face(sx, j) == x
                assert X.face(sx, j + 1) == x


def test_face_of_a_vertex_is_an_input_error():
    X = generator("standard", 1)
    with pytest.raises(InputError):
        X.face(X.simplices(0)[0], 0)


def test_degenerate_names_and_round_trip_of_face_entries():
    X = generator("standard", 2)
    v = X.simplices(0)[0]
    assert X.name(X.degeneracy(v, 0)) == "s0(0)"
    Y = SSet.from_face_entries(X.max_dim, X.names, X.face_entries())
    assert Y.canonical() == X.canonical()


def test_validate_reports_broken_face_pair():
    X = generator("standard", 2)
    rows = X.face_entries()
    for row in rows:
        if row[0] == 2 and row[2] == 0:
            row[3] = (row[3] + 1) % 3
    Y = SSet.from_face_entries(2, X.names, rows)
    problems = Y.validate()
    assert problems and "d0" in problems[0]


def test_horn_scan_on_small_examples():
    d1 = generator("standard", 1, max_dim=3)
    rep = is_kan_up_to(d1, 3)
    assert not rep.verdict
    assert rep.first_failure.n == 2 and rep.first_failure.i in (0, 2)
    q = is_quasicategory_up_to(d1, 3)
    assert q.verdict and q.unique_fillers
    with pytest.raises(TruncationError):
        is_kan_up_to(generator("standard", 1), 2)


def test_inner_horn_of_boundary_has_no_filler():
    X = generator("boundary", 2, max_dim=2)
    rep = is_quasicategory_up_to(X, 2)
    assert not rep.verdict
    assert rep.first_failure.describe(X).startswith("Lambda^2_1")


def test_pi0_of_disjoint_pieces():
    P = Poset.from_relation(["a", "b", "c", "d"], [(0, 1), (2, 3)])
    X = nerve_of_poset(P, 2)
    assert len(pi0(X)) == 2
    assert len(pi0(nerve_of_poset(Poset.antichain(3), 1))) == 3


def test_nerve_of_chain_is_the_standard_simplex():
    for n in range(1, 5):
        P = Poset.chain(n + 1)
        assert nerve_of_poset(P, n).counts() == generator("standard", n).counts()


def test_maps_between_simplices_are_monotone_functions():
    # maps Delta^1 -> Delta^2 are the 6 monotone maps [1] -> [2]
    maps = enumerate_maps(generator("standard", 1), generator("standard", 2, max_dim=1), 1)
    assert len(maps) == 6
    for m in maps:
        assert m.validate() == []


def test_find_fillers_of_an_inner_horn_in_delta2():
    X = generator("standard", 2)
    H = generator("horn", 2, 1)
    incl = SimplicialMap(H, X, tuple(
        tuple(X.simplices(d)[list(X.names[d]).index(n)] for n in H.names[d]) for d in range(3)))
    assert incl.validate() == []
    assert len(find_fillers(X, incl)) == 1


def test_surjection_count():
    # surjections [n] -> [m] correspond to (n choose m) degeneracy words
    for n in range(5):
        for m in range(n + 1):
            assert len(surjections(n, m)) == comb(n, m)


def brute_chain_counts(P: Poset, top: int):
    n = len(P.elements)
    out = []
    for k in range(top + 1):
        total = 0
        for combo in itertools.permutations(range(n), k + 1):
            if all(P.le(a, b) and a != b for a, b in zip(combo, combo[1:])):
                total += 1
        out.append(total)
    return tuple(out)


posets = st.integers(2, 5).flatmap(lambda n: st.lists(
    st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda p: p[0] < p[1]),
    max_size=6).map(lambda pairs: Poset.from_relation([f"p{k}" for k in range(n)], pairs)))


@settings(max_examples=40, deadline=None)
@given(posets)
def test_poset_nerves_are_quasicategories_with_unique_fillers(P):
    X = nerve_of_poset(P, 3)
    assert X.validate() == []
    assert X.counts() == brute_chain_counts(P, 3)
    rep = is_quasicategory_up_to(X, 3)
    assert rep.verdict and rep.unique_fillers


def test_simplex_named_tuple_basics():
    x = Simplex.nondegenerate(2, 0)
    assert not x.degenerate and x.dim == 2


def test_generator_examples():
    assert generator("standard", 2).counts() == (3, 3, 1)
    assert generator("horn", 2, 1).counts() == (3, 2, 0)
    assert generator("boundary", 1).counts() == (2, 0)


def test_poset_nerve_examples():
    assert nerve_of_poset(Poset.chain(2), 1).counts() == (2, 1)
    square = Poset.from_relation(["03", "013", "023", "0123"], [(0, 1), (0, 2), (1, 3), (2, 3)])
    assert nerve_of_poset(square, 2).counts() == (4, 5, 2)
    assert nerve_of_poset(Poset.antichain(3), 1).counts() == (3, 0)


def test_kan_and_qcat_examples():
    assert is_kan_up_to(generator("standard", 0, max_dim=3), 3).verdict
    assert is_quasicategory_up_to(generator("standard", 3), 3).verdict
    assert not is_quasicategory_up_to(generator("horn", 2, 1), 2).verdict


def test_pi0_examples():
    assert len(pi0(generator("boundary", 1))) == 2
    assert len(pi0(generator("standard", 1))) == 1


def test_map_count_examples():
    Y = generator("standard", 2, max_dim=1)
    assert len(enumerate_maps(generator("standard", 0), Y, 0)) == Y.count(0)
    assert len(enumerate_maps(generator("boundary", 1), Y, 0)) == Y.count(0) ** 2
    # Delta^1 into the nerve of [1]: two degenerate edges and the arrow
    assert len(enumerate_maps(generator("standard", 1), generator("standard", 1), 1)) == 3


def test_spine_names_disambiguate_colliding_spines():
    from simpcat.simpset import spine_names

    names = spine_names([("r", "i;r", "i"), ("r;i", "r", "i"), ("r", "i")])
    assert names == ["r;i;r;i[0]", "r;i;r;i[1]", "r;i"]
    # order of the input does not change the suffixes
    assert spine_names([("r;i", "r", "i"), ("r", "i;r", "i")]) == ["r;i;r;i[1]", "r;i;r;i[0]"]


def test_retraction_nerve_names_are_unique():
    from simpcat import corpus
    from simpcat.fincat import nerve

    X = nerve(corpus.category("retraction"), 3)
    for n in range(4):
        assert len(set(X.names[n])) == len(X.names[n])
