import pytest
from hypothesis import given, settings, strategies as st

from props import (
    SEEDS,
    STRANDS,
    check_closed_forms,
    check_confluence,
    check_disjoint_loops,
    check_homology,
    check_matching,
    check_structured,
    check_vanishing,
    random_complex,
)
from gbg.presenter import canonical_relator, commutator, is_commutator, same_relator
from gbg.rewrite import inverse


@pytest.mark.parametrize("seed", SEEDS)
def test_random_graph(seed):
    for n in STRANDS:
        cx = random_complex(seed, n)
        _, crit = check_matching(cx)
        assert crit[0] == len(cx.critical_cells(0))
        check_confluence(cx, seed)
        check_closed_forms(cx)
        check_structured(cx)
        check_vanishing(cx)
        check_homology(cx)


@pytest.mark.parametrize("seed", range(0, 50, 5))
def test_disjoint_loops_give_commutators(seed):
    check_disjoint_loops(seed)


def test_suite_is_not_vacuous():
    hits = corners = rels = 0
    for seed in range(10):
        for n in (2, 3):
            cx = random_complex(seed, n)
            hits += check_closed_forms(cx)
            corners += check_vanishing(cx)
            rels += check_structured(cx)
    assert hits > 50 and corners > 50 and rels > 20


words = st.lists(st.tuples(st.integers(0, 3), st.sampled_from([1, -1])), max_size=8).map(tuple)


@settings(max_examples=200, deadline=None, derandomize=True)
@given(words, words)
def test_commutators_are_recognised(x, y):
    assert is_commutator(commutator(x, y))


@settings(max_examples=200, deadline=None, derandomize=True)
@given(words, st.integers(0, 7))
def test_canonical_form_is_conjugacy_and_inversion_invariant(w, k):
    conj = w[:k] if w else ()
    moved = inverse(conj) + w + conj
    assert same_relator(w, moved)
    assert canonical_relator(w) == canonical_relator(inverse(w))


@settings(max_examples=200, deadline=None, derandomize=True)
@given(words)
def test_nonzero_exponent_sum_is_never_a_commutator(w):
    if any(sum(s for g, s in w if g == x) for x in range(4)):
        assert not is_commutator(w)
