from hypothesis import given, settings, strategies as st

from simpcat import corpus
from simpcat.enriched.free import (building_block, capped_from_fincategory, free_monoid, free_product,
                                   free_vcategory)
from simpcat.enriched.value import Value, ValueMap, chain_value, nerve_value
from simpcat.enriched.vcat import VGraph, discrete_vcategory, graph_tensor, terminal_vcategory, u_category
from simpcat.simpset import generator


def test_values_from_sets_and_simplicial_sets():
    V = Value.from_set(["a", "b"])
    assert V.discrete and V.level(5) == ("a", "b")
    W = Value.from_sset(generator("horn", 2, 1))
    assert W.validate() == []
    assert [len(W.nondegenerate(n)) for n in range(3)] == [3, 2, 0]
    assert W.components() == [("0", "1", "2")]
    assert W.face(1, "01", 0) == "1"


def test_extend_and_round_trip_to_sset():
    V = Value.from_set(["p", "q"]).extend_to(2)
    assert V.validate() == [] and V.sizes() == (2, 2, 2)
    X = Value.from_sset(generator("standard", 2)).to_sset()
    assert X.canonical() == generator("standard", 2).canonical()


def test_chain_value_and_nerve_value_counts():
    # weakly increasing chains in a 2-chain: n + 2 of them at level n
    C = chain_value([0, 1], lambda a, b: a <= b, 3)
    assert C.sizes() == (2, 3, 4, 5)
    assert C.validate() == []
    B = nerve_value(corpus.category("Z2"), 3)
    assert B.sizes() == (1, 2, 4, 8)
    assert B.validate() == []


def test_products_and_coproducts():
    A = Value.from_sset(generator("standard", 1))
    P = A.product(A)
    assert P.sizes() == (4, 9) and P.validate() == []
    S = Value.coproduct([A, Value.from_set(["z"])])
    assert S.sizes() == (3, 4) and len(S.components()) == 2


def test_value_maps_check_faces():
    A = Value.from_sset(generator("standard", 1))
    const = ValueMap.from_function(A, A, lambda n, x: A.total_degeneracy("0", n) if n else "0")
    assert const.validate() == []
    bad = ValueMap(A, A, ({"0": "0", "1": "1"}, {x: "s0(0)" for x in A.level(1)}))
    assert bad.validate()


def test_u_category_examples():
    empty = u_category(Value.empty())
    assert empty.validate() == [] and empty.homs[0, 1].is_empty()
    walking = u_category(Value.from_set(["s"]))
    assert walking.level_category(0)[0].validate() == []
    horn = u_category(Value.from_sset(generator("horn", 2, 1)))
    assert [len(horn.homs[0, 1].nondegenerate(n)) for n in range(3)] == [3, 2, 0]
    assert horn.validate() == []


def test_discrete_and_terminal_vcategories():
    for name in ("Z3", "span", "E2xZ2"):
        assert discrete_vcategory(corpus.category(name)).validate() == []
    T = terminal_vcategory()
    assert T.validate() == [] and T.compose(0, 0, 0, 0, "id_*", "id_*") == "id_*"


def test_tensor_examples():
    one = ("a",)
    G = VGraph(one, {(0, 0): Value.from_set(["u", "v"])})
    H = VGraph(one, {(0, 0): Value.from_set(["w"])})
    assert graph_tensor(G, H).homs[0, 0].size() == 2
    E = VGraph(one, {(0, 0): Value.empty()})
    assert graph_tensor(G, E).homs[0, 0].size() == 0
    two = ("a", "b")
    Ga = VGraph(two, {(0, 0): Value.empty(), (0, 1): Value.from_set(["e"]), (1, 0): Value.empty(),
                      (1, 1): Value.empty()})
    Hb = VGraph(two, {(0, 0): Value.empty(), (0, 1): Value.empty(), (1, 0): Value.from_set(["e'"]),
                      (1, 1): Value.empty()})
    T = graph_tensor(Ga, Hb)
    # (G x H)(c, d) pairs an H-edge c -> e with a G-edge e -> d
    assert T.homs[1, 1].size() == 1 and T.homs[0, 0].size() == 0
    assert T.homs[0, 1].size() == 0 and T.homs[1, 0].size() == 0
    T2 = graph_tensor(Hb, Ga)
    assert T2.homs[0, 0].size() == 1 and T2.homs[1, 1].size() == 0


def test_free_monoid_examples():
    assert free_monoid([], 3).total() == 1
    assert free_monoid(["a"], 3).total() == 4
    assert free_monoid(["a", "b"], 2).total() == 7
    assert free_monoid(["a", "b"], 2).check_laws() == []


def test_free_vcategory_examples():
    two = ("a", "b")
    G = VGraph(two, {(0, 0): Value.empty(), (0, 1): Value.from_set(["e"]), (1, 0): Value.empty(),
                     (1, 1): Value.empty()})
    K = free_vcategory(G, 4)
    assert (K.count(0, 1), K.count(1, 0), K.count(0, 0), K.count(1, 1)) == (1, 0, 1, 1)
    loop = VGraph(("a",), {(0, 0): Value.from_set(["u"])})
    assert free_vcategory(loop, 3).count(0, 0) == 4
    full = VGraph(two, {(0, 0): Value.from_set(["l"]), (0, 1): Value.from_set(["x", "y"]),
                        (1, 0): Value.from_set(["z"]), (1, 1): Value.empty()})
    B = building_block(full, 0, 1, 5)
    assert (B.count(0, 1), B.count(0, 0), B.count(1, 0), B.count(1, 1)) == (2, 1, 0, 1)


def test_free_product_examples():
    Ma, Mb = free_monoid(["a"], 2), free_monoid(["b"], 2)
    P = free_product([Ma, Mb], 2)
    assert P.total() == 7
    assert P.check_laws() == []
    C = capped_from_fincategory(corpus.category("Z3"))
    unit = capped_from_fincategory(corpus.cyclic_group(1))
    assert free_product([C, unit], 5).total() == C.total()
    # neighbouring letters from the same factor compose, and inverse pairs vanish
    Z2 = capped_from_fincategory(corpus.category("Z2"))
    Q = free_product([Z2, Mb], 4)
    r = (0, 0, ((0, "r1"),))
    assert Q.compose_fn(r, r) == (0, 0, ())


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 3), st.integers(1, 3), st.integers(1, 3))
def test_free_product_is_associative_up_to_regrouping(p, q, cap):
    A, B, C = free_monoid(["a"], p), free_monoid(["b"], q), free_monoid(["c"], 2)
    left = free_product([free_product([A, B], cap), C], cap)
    right = free_product([A, free_product([B, C], cap)], cap)
    flat = free_product([A, B, C], cap)
    assert left.total() == right.total() == flat.total()
