import random

import pytest
from hypothesis import given, settings, strategies as st

from gbg.smith import invariant_factors, sparse_invariant_factors

sympy = pytest.importorskip("sympy")
from sympy.matrices.normalforms import invariant_factors as sympy_factors  # noqa: E402


def reference(rows):
    if not rows or not rows[0]:
        return []
    d = sympy_factors(sympy.Matrix(rows), domain=sympy.ZZ)
    return [abs(int(x)) for x in d if x != 0]


def test_identity():
    assert invariant_factors([[1, 0], [0, 1]]) == [1, 1]


def test_classic_example():
    assert invariant_factors([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]


def test_zero_and_empty():
    assert invariant_factors([[0, 0], [0, 0]]) == []
    assert invariant_factors([]) == []


def test_divisibility_chain():
    d = invariant_factors([[4, 0, 0], [0, 6, 0], [0, 0, 10]])
    assert d == [2, 2, 60]


@pytest.mark.parametrize("seed", range(40))
def test_dense_matches_sympy(seed):
    rng = random.Random(seed)
    r, c = rng.randint(1, 6), rng.randint(1, 6)
    rows = [[rng.choice([0, 0, 1, -1, 2, 3, -4]) for _ in range(c)] for _ in range(r)]
    assert invariant_factors(rows) == reference(rows)


@settings(max_examples=60, deadline=None, derandomize=True)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=5))
def test_sparse_agrees_with_dense(rows):
    sparse = [{j: v for j, v in enumerate(row) if v} for row in rows]
    assert sparse_invariant_factors(sparse, ncols=4) == invariant_factors(rows)


def test_sparse_unit_pivots_only():
    rows = [{0: 1, 1: -1}, {1: 1, 2: -1}, {0: 1, 2: -1}]
    assert sparse_invariant_factors(rows) == [1, 1]
