import pytest
from hypothesis import given, settings, strategies as st

from simpcat import corpus
from simpcat.errors import InputError, Undecided
from simpcat.fincat import (CatFunctor, FinCategory, PresentedCategory, Quiver, check_localization_universal,
                            enumerate_functors, find_isomorphism, free_category, fundamental_category,
                            identity_functor, is_groupoid, iso_core, localize, nerve)
from simpcat.simpset import SimplicialMap, find_fillers, generator, is_kan_up_to


def horn_map(X, n, i, edge_names):
    """Horn in X given the images of the horn's edges (by name, in the horn's edge order)."""
    H = generator("horn", n, i)
    by_name = {X.name(s): s for s in X.simplices(1)}
    edges = tuple(by_name[e] for e in edge_names)
    verts = [None] * (n + 1)
    for (name, e) in zip(H.names[1], edges):
        a, b = int(name[0]), int(name[1])
        verts[a], verts[b] = X.face(e, 1), X.face(e, 0)
    return SimplicialMap(H, X, (tuple(verts), edges) + tuple(() for _ in range(2, n + 1)))


def test_from_table_and_queries():
    C = corpus.category("Z2-arrow")
    assert C.validate() == []
    m, f = C.mor("m"), C.mor("f")
    assert C.name(C.compose(f, m)) == "m;f"
    assert C.name(C.compose(m, m)) == "id_a"
    assert [C.name(x) for x in C.hom(0, 1)] == ["f", "m;f"]
    assert C.is_invertible(m) and not C.is_invertible(f)


def test_from_table_names_a_missing_pair():
    C = corpus.category("Z2")
    homs = C.homs_table()
    compose = [[C.name(g), C.name(f), C.name(gf)] for (g, f), gf in sorted(C.comp.items())][:-1]
    with pytest.raises(InputError, match="missing entry for pair"):
        FinCategory.from_table(C.objects, homs, compose, [C.name(i) for i in C.identities])


def test_corpus_is_valid_and_in_range():
    names = corpus.category_names()
    assert len(names) >= 20
    for name in names:
        C = corpus.category(name)
        assert C.validate() == [], name
        assert len(C.objects) <= 4 and len(C.morphisms) <= 12, name


def test_nerve_examples():
    assert nerve(corpus.category("walking-arrow"), 3).counts() == (2, 1, 0, 0)
    assert nerve(corpus.category("Z2"), 4).counts() == (1, 1, 1, 1, 1)
    assert nerve(corpus.category("E2"), 4).counts() == (2, 2, 2, 2, 2)


def test_filler_examples():
    Z2 = nerve(corpus.category("Z2"), 2)
    assert len(find_fillers(Z2, horn_map(Z2, 2, 1, ["r1", "r1"]))) == 1
    A = nerve(corpus.category("walking-arrow"), 2)
    assert find_fillers(A, horn_map(A, 2, 0, ["f", "s0(0)"])) == []
    assert find_fillers(A, horn_map(A, 2, 1, ["f", "s0(1)"]))


def test_kan_examples():
    assert is_kan_up_to(nerve(corpus.category("Z2"), 3), 3).verdict
    rep = is_kan_up_to(nerve(corpus.category("walking-arrow"), 2), 2)
    assert not rep.verdict and rep.first_failure.n == 2


def test_fundamental_category_examples():
    walking = corpus.category("walking-arrow")
    assert find_isomorphism(fundamental_category(nerve(walking, 3)).to_fincategory(), walking)
    assert find_isomorphism(fundamental_category(generator("standard", 2)).to_fincategory(),
                            corpus.category("[2]"))
    P = fundamental_category(generator("boundary", 2))
    assert len(P.to_fincategory().hom(0, 2)) == 2


def test_iso_core_examples():
    core = iso_core(corpus.category("walking-arrow"))
    assert len(core.morphisms) == 2 and core.non_identities() == []
    Z2 = corpus.category("Z2")
    assert find_isomorphism(iso_core(Z2), Z2)
    # E2 times an idempotent monoid: the idempotent component does not invert
    assert find_isomorphism(iso_core(corpus.category("E2xIdem")), corpus.category("E2"))


def test_free_category_examples():
    one_edge = free_category(Quiver(("a", "b"), (("f", 0, 1),)))
    assert len(one_edge.normal_forms(0, 1, 5)) == 1
    assert [one_edge.path_name(p) for p in one_edge.normal_forms(0, 0, 5)] == ["id_a"]
    loop = free_category(Quiver(("a",), (("u", 0, 0),)))
    assert [loop.path_name(p) for p in loop.normal_forms(0, 0, 3)] == ["id_a", "u", "u;u", "u;u;u"]
    line = free_category(Quiver(("0", "1", "2"), (("e0", 0, 1), ("e1", 1, 2))), groupoid=True)
    for a in range(3):
        for b in range(3):
            assert len(line.normal_forms(a, b, 6)) == 1
    with pytest.raises(Undecided):
        loop.to_fincategory(4)


def test_free_groupoid_on_parallel_pair_word_counts():
    P = free_category(Quiver(("x", "y"), (("f", 0, 1), ("g", 0, 1))), groupoid=True)
    # reduced words alternate forward and backward letters with no cancelling neighbours:
    # one forward letter, then each further back-and-forth step has one reduced choice per side
    names = [P.path_name(p) for p in P.normal_forms(0, 1, 3)]
    assert names == ["f", "g", "f;g^-1;f", "g;f^-1;g"]
    assert len(P.normal_forms(0, 1, 5)) == 6


def test_localize_examples():
    walking = corpus.category("walking-arrow")
    L = localize(walking, ["f"]).category.to_fincategory()
    assert all(len(L.hom(a, b)) == 1 for a in range(2) for b in range(2))
    same = localize(walking, ["id_0"]).category.to_fincategory()
    assert find_isomorphism(same, walking)
    pp = localize(corpus.category("parallel-pair"), ["f"]).category
    with pytest.raises(Undecided):
        pp.to_fincategory(6)
    x, y = 0, 1
    assert [pp.path_name(p) for p in pp.normal_forms(x, y, 3)] == ["f", "g", "g;f^-1;g"]


def test_localization_universal_examples():
    walking, E2 = corpus.category("walking-arrow"), corpus.category("E2")
    rep = check_localization_universal(walking, ["f"], E2)
    assert rep.verdict and rep.functors_checked == 4
    assert all(c == 1 for _, c in rep.factorizations_per_functor)
    trivial = check_localization_universal(walking, [], walking)
    assert trivial.verdict and trivial.functors_checked == len(list(enumerate_functors(walking, walking)))
    rep = check_localization_universal(corpus.category("parallel-pair"), ["f"], corpus.category("Z3"))
    # every functor into a group inverts f: 3 choices for f and 3 for g
    assert rep.verdict and rep.functors_checked == 9


def test_functor_enumeration_and_isomorphism():
    Z3 = corpus.category("Z3")
    assert len(list(enumerate_functors(Z3, Z3))) == 3
    assert find_isomorphism(Z3, corpus.category("Z4")) is None
    assert identity_functor(Z3).validate() == []
    bad = CatFunctor(Z3, Z3, (0,), tuple(Z3.identities[0] for _ in Z3.morphisms))
    assert bad.validate() == []  # the constant functor is a functor
    assert is_groupoid(Z3) and not is_groupoid(corpus.category("idempotent"))


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(corpus.category_names()))
def test_tau_of_nerve_is_identity(name):
    C = corpus.category(name)
    T = fundamental_category(nerve(C, 3)).to_fincategory()
    assert find_isomorphism(T, C) is not None


def test_presented_category_relations_are_checked():
    Q = Quiver(("a", "b"), (("f", 0, 1), ("g", 1, 0)))
    P = PresentedCategory(Q, (((0, 0, (0, 2)), (0, 0, ())), ((1, 1, (2, 0)), (1, 1, ()))))
    assert P.validate() == []
    assert find_isomorphism(P.to_fincategory(), corpus.category("E2"))
    bad = PresentedCategory(Q, (((0, 0, (0,)), (0, 0, ())),))
    assert bad.validate()
