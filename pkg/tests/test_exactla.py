from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from christoffel.exactla import SparseMat, kernel_basis, rank, row_basis, span_dim

from strategies import rationals


def dense_rank(rows):
    """Textbook Gaussian elimination, used as an oracle."""
    m = [[Fraction(x) for x in r] for r in rows]
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
    return r


matrices = st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(st.one_of(st.just(0), rationals), min_size=n, max_size=n), min_size=1, max_size=6))


@given(matrices)
def test_rank_matches_dense_oracle(rows):
    assert rank(SparseMat.from_rows(rows)) == dense_rank(rows)


@given(matrices)
def test_kernel_is_kernel(rows):
    m = SparseMat.from_rows(rows)
    basis = kernel_basis(m)
    assert len(basis) == m.ncols - rank(m)
    for v in basis:
        assert all(x == 0 for x in m.matvec(v))


@given(matrices)
def test_span_dim_and_row_basis(rows):
    vecs = [{j: x for j, x in enumerate(r) if x} for r in rows]
    assert span_dim(vecs) == dense_rank(rows)
    idx = row_basis(vecs)
    assert len(idx) == dense_rank(rows)
    assert dense_rank([rows[i] for i in idx]) == len(idx)


@pytest.mark.parametrize("rows,r", [
    ([[1, 2], [2, 4]], 1),
    ([[1, 0], [0, 1]], 2),
    ([[0, 0, 0]], 0),
    ([[Fraction(1, 3), 1], [1, 3]], 1),
])
def test_small_ranks(rows, r):
    assert rank(SparseMat.from_rows(rows)) == r


def test_from_columns_keys():
    m, keys = SparseMat.from_columns([{"a": 1, "b": 2}, {"b": 1}])
    assert keys == ["a", "b"]
    assert m.to_dense() == [[1, 0], [2, 1]]


def test_out_of_range_entry():
    with pytest.raises(IndexError):
        SparseMat(1, 1, {(1, 0): 1})
