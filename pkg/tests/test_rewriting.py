import pytest
from hypothesis import given, settings, strategies as st

from simpcat.errors import BudgetExceeded
from simpcat.rewriting import (CongruenceClosure, concat, irreducible_is_finite, irreducible_paths,
                               knuth_bendix, shortlex)


def one_object(letters):
    return {c: (0, 0) for c in range(letters)}


def test_cyclic_monoid_normal_forms():
    # a^3 = 1
    system = knuth_bendix([((0, 0, 0), ())])
    assert system.normalize((0,) * 7) == (0,)
    ends = one_object(1)
    assert [p[2] for p in irreducible_paths(system, ends, 0, 5)] == [(), (0,), (0, 0)]
    assert irreducible_is_finite(system, ends, 1, 5)


def test_completion_adds_the_missing_rule():
    # ab = ba with a^2 = b^2 = 1 gives the Klein group: 4 normal forms
    system = knuth_bendix([((1, 0), (0, 1)), ((0, 0), ()), ((1, 1), ())])
    forms = irreducible_paths(system, one_object(2), 0, 6)
    assert len(forms) == 4


def test_closure_counts_on_a_group():
    cc = CongruenceClosure(1, one_object(1), [((0, 0, (0, 0, 0)), (0, 0, ()))], 6)
    assert len(cc.classes(0, 0)) == 3
    assert cc.same((0, 0, (0,) * 4), (0, 0, (0,)))


def test_budgets_are_reported():
    with pytest.raises(BudgetExceeded):
        CongruenceClosure(1, one_object(3), [], 12, budget=1000)
    # a b a = b a b (braid relation) has no finite shortlex completion
    with pytest.raises(BudgetExceeded):
        knuth_bendix([((0, 1, 0), (1, 0, 1))], max_rules=20, max_steps=400)


def test_concat_and_shortlex():
    assert concat((0, 1, (2,)), (1, 2, (3, 4))) == (0, 2, (2, 3, 4))
    assert shortlex((1,)) < shortlex((0, 0))


words = st.lists(st.integers(0, 1), max_size=3).map(tuple)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(words, words), min_size=1, max_size=3))
def test_closure_identifications_agree_with_completion(relations):
    """Every identification made by the capped closure holds in the completed system."""
    try:
        system = knuth_bendix(relations, max_rules=60, max_steps=2000)
    except BudgetExceeded:
        return
    cap = 4
    ends = one_object(2)
    cc = CongruenceClosure(1, ends, [((0, 0, u), (0, 0, v)) for u, v in relations], cap)
    for p in cc.paths:
        assert system.normalize(p[2]) == system.normalize(cc.rep(p)[2])
    # irreducible words are pairwise inequivalent in the closure too
    forms = [p for p in irreducible_paths(system, ends, 0, cap)]
    reps = {cc.rep(p) for p in forms}
    assert len(reps) == len(forms)
