import random

import pytest
from hypothesis import given, settings, strategies as st

from simpcat import corpus
from simpcat.enriched.resolution import comonad_resolution, random_element
from simpcat.errors import InputError


def test_composing_a_square_in_z2_gives_the_identity():
    C = corpus.category("Z2")
    res = comonad_resolution(C, 2, 4)
    m = C.mor("r1")
    word = (0, 0, (m, m))
    assert res.face(0, 0, word) == (0, 0, C.identities[0])
    assert res.augmentation(0, word) == C.identities[0]


def test_level_sizes_count_nested_words():
    # walking arrow: one non-identity letter, so level k has the empty words, the
    # single letter wrapped k+1 times, nothing longer
    res = comonad_resolution(corpus.category("walking-arrow"), 3, 3)
    assert [len(l.morphisms) for l in res.levels] == [3, 3, 3, 3]
    assert not res.levels[0].truncated
    # Z2 has arbitrarily long words: 1 + 1 + 1 + 1 words of length <= 3 at level 0
    res = comonad_resolution(corpus.category("Z2"), 1, 3)
    assert len(res.levels[0].morphisms) == 4 and res.levels[0].truncated


def test_section_law_on_corpus():
    for name in ("Z3", "[2]", "idempotent", "span"):
        C = corpus.category(name)
        res = comonad_resolution(C, 3, 3)
        for k in range(4):
            for m in range(len(C.morphisms)):
                assert res.check_section(k, m) == []
                assert res.augmentation(k, res.section(k, m)) == m


def test_exhaustive_identities_on_small_levels():
    C = corpus.category("[2]")
    res = comonad_resolution(C, 2, 3)
    for lvl in res.levels:
        by_src = {}
        for y in lvl.morphisms:
            by_src.setdefault(y[0], []).append(y)
        for x in lvl.morphisms:
            assert res.check(lvl.k, x) == []
            for y in by_src.get(x[1], []):
                assert res.check(lvl.k, x, y) == []


def test_bad_indices_are_rejected():
    res = comonad_resolution(corpus.category("Z2"), 1, 2)
    with pytest.raises(InputError):
        res.face(1, 2, (0, 0, ()))
    with pytest.raises(InputError):
        res.degeneracy(0, 1, (0, 0, ()))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["Z3", "idempotent", "square", "E2"]), st.integers(0, 3), st.integers(0, 10**6))
def test_random_words_satisfy_the_simplicial_identities(name, k, seed):
    C = corpus.category(name)
    res = comonad_resolution(C, 3, 3)
    rng = random.Random(seed)
    x = random_element(C, k, rng)
    y = random_element(C, k, rng)
    assert res.check(k, x, y if x[1] == y[0] else None) == []
