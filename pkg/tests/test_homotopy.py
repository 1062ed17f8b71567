import pytest

from simpcat import corpus
from simpcat.enriched.homotopy import (codiscrete_enriched, group_enriched, groupoid_core, identity_vfunctor,
                                       is_fibration_truncated, is_weq_truncated, pi0_vcat, terminal_functor)
from simpcat.enriched.value import Value, ValueMap
from simpcat.enriched.vcat import VFunctor, discrete_vcategory, u_category
from simpcat.errors import InputError
from simpcat.fincat import find_isomorphism, iso_core
from simpcat.simpset import generator


def discrete(name):
    return discrete_vcategory(corpus.category(name))


def test_pi0_examples():
    C = corpus.category("S3")
    assert find_isomorphism(pi0_vcat(discrete("S3")), C)
    two = u_category(Value.from_sset(generator("boundary", 1)))
    assert len(pi0_vcat(two).hom(0, 1)) == 2
    one = u_category(Value.from_sset(generator("standard", 1)))
    assert len(pi0_vcat(one).hom(0, 1)) == 1


def test_pi0_of_kan_examples():
    for name, K in corpus.kan_enriched():
        assert K.validate() == [], name
        P = pi0_vcat(K)
        assert P.validate() == [], name
    K = dict(corpus.kan_enriched())["arrowxBZ3"]
    assert find_isomorphism(pi0_vcat(K), corpus.category("walking-arrow"))


def test_groupoid_core_examples():
    E2 = discrete("E2")
    G = groupoid_core(E2)
    assert all(G.homs[k].size() == E2.homs[k].size() for k in E2.homs)
    arrow = groupoid_core(discrete("walking-arrow"))
    assert arrow.homs[0, 1].is_empty() and arrow.validate() == []


@pytest.mark.parametrize("name", corpus.category_names())
def test_core_projection_on_components(name):
    C = discrete(name)
    assert find_isomorphism(pi0_vcat(groupoid_core(C)), iso_core(pi0_vcat(C)))


def test_core_of_the_core_is_the_core():
    for name, K in corpus.kan_enriched():
        G = groupoid_core(K)
        GG = groupoid_core(G)
        assert all(GG.homs[k].sizes() == G.homs[k].sizes() for k in G.homs), name


def test_weak_equivalence_examples():
    assert is_weq_truncated(identity_vfunctor(discrete("Z3"))).verdict
    assert is_weq_truncated(terminal_functor(discrete("E2"))).verdict
    rep = is_weq_truncated(terminal_functor(discrete("walking-arrow")))
    assert rep.verdict is False and rep.failures
    K = dict(corpus.kan_enriched())["E2xBZ2"]
    assert is_weq_truncated(terminal_functor(K)).verdict


def test_fibration_examples():
    assert is_fibration_truncated(identity_vfunctor(discrete("Z3")), 2).verdict
    for name in corpus.category_names():
        assert is_fibration_truncated(terminal_functor(discrete(name)), 2).verdict, name
    a = discrete_vcategory(corpus.indiscrete(["a"]))
    E2 = discrete("E2")
    inclusion = VFunctor(a, E2, (0,), {(0, 0): ValueMap.from_function(a.homs[0, 0], E2.homs[0, 0],
                                                                        lambda n, x: x)})
    rep = is_fibration_truncated(inclusion, 2)
    assert rep.verdict is False and rep.parts["FT2"] is False


def test_kan_enriched_terminal_maps_are_fibrations():
    for name, K in corpus.kan_enriched():
        rep = is_fibration_truncated(terminal_functor(K), 2)
        assert rep.verdict is not False, name


def test_non_kan_hom_fails_horn_lifting():
    # Delta^1 is not Kan, so the map of its hom to a point has an unliftable outer horn
    simplex = Value.from_sset(generator("standard", 1, max_dim=2))
    rep = is_fibration_truncated(terminal_functor(u_category(simplex)), 2)
    assert rep.verdict is False and rep.parts["FT1"] is False
    assert any("horn" in f for f in rep.failures)


def test_group_enrichment_needs_an_abelian_group():
    with pytest.raises(InputError):
        group_enriched(corpus.category("Z2"), corpus.category("S3"))
    K = codiscrete_enriched(corpus.category("Z2"))
    assert K.validate() == []
