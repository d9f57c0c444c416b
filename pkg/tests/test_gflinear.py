"""Exact linear algebra over GF(2)/GF(3)."""

import itertools
from hypothesis import given, settings, strategies as st

from khoco.gflinear import GFMatrix, GFVector, in_image, kernel_basis, rank


def matrix_from_rows(q, rows):
    n_rows = len(rows)
    n_cols = len(rows[0]) if rows else 0
    entries = [(i, j, v) for i, row in enumerate(rows)
               for j, v in enumerate(row) if v % q]
    return GFMatrix.from_entries(q, n_rows, n_cols, entries)


def brute_force_image(q, m, b):
    """Enumerate all q^cols column combinations."""
    for coeffs in itertools.product(range(q), repeat=m.cols):
        acc = GFVector.zero(q, m.rows)
        for j, c in enumerate(coeffs):
            acc = acc + m.column_vector(j).scale(c)
        if acc.data == b.data:
            return True
    return False


def test_rank_zero_and_identity():
    assert rank(GFMatrix(2, 3, 3)) == 0
    eye4 = matrix_from_rows(3, [[1 if i == j else 0 for j in range(4)]
                                for i in range(4)])
    assert rank(eye4) == 4


def test_reduced_hopf_differential_rank():
    # both columns map to the same nonzero vector
    m = matrix_from_rows(2, [[1, 1], [1, 1]])
    assert rank(m) == 1
    ker = kernel_basis(m)
    assert len(ker) == 1
    assert ker[0].weight == 2  # the sum of both generators


def test_kernel_of_zero_matrix():
    m = GFMatrix(2, 1, 5)
    ker = kernel_basis(m)
    assert len(ker) == 5
    assert all(v.weight == 1 for v in ker)


def test_kernel_of_identity_empty():
    eye = matrix_from_rows(2, [[1, 0], [0, 1]])
    assert kernel_basis(eye) == []


def test_in_image_basics():
    m = matrix_from_rows(2, [[1, 1], [1, 1]])
    ok, pre = in_image(m, GFVector.zero(2, 2))
    assert ok and pre.is_zero()
    ok, pre = in_image(m, GFVector.from_support(2, 2, [(0, 1), (1, 1)]))
    assert ok
    assert m.apply(pre).support == [(0, 1), (1, 1)]
    ok, pre = in_image(m, GFVector.from_support(2, 2, [(0, 1)]))
    assert not ok and pre is None


def test_in_image_identity_returns_b():
    eye = matrix_from_rows(3, [[1, 0], [0, 1]])
    b = GFVector.from_support(3, 2, [(0, 2), (1, 1)])
    ok, pre = in_image(eye, b)
    assert ok and pre.data == b.data


def test_single_generator_in_span_of_equal_columns():
    # both columns of the degree-1 reduced Hopf differential hit the sum of
    # the two top generators; a single generator is not in the image
    m = matrix_from_rows(2, [[1, 1], [1, 1]])
    ok, _ = in_image(m, GFVector.from_support(2, 2, [(0, 1)]))
    assert ok is False


@st.composite
def small_matrix(draw):
    q = draw(st.sampled_from([2, 3]))
    rows = draw(st.integers(1, 6))
    cols = draw(st.integers(1, 6))
    data = draw(st.lists(
        st.lists(st.integers(0, q - 1), min_size=cols, max_size=cols),
        min_size=rows, max_size=rows))
    return q, matrix_from_rows(q, data)


@given(small_matrix())
@settings(max_examples=150, deadline=None)
def test_rank_equals_transpose_rank(qm):
    _, m = qm
    assert rank(m) == rank(m.transpose())


@given(small_matrix())
@settings(max_examples=150, deadline=None)
def test_rank_nullity(qm):
    _, m = qm
    assert m.cols == rank(m) + len(kernel_basis(m))


@given(small_matrix())
@settings(max_examples=150, deadline=None)
def test_kernel_vectors_annihilate(qm):
    _, m = qm
    for v in kernel_basis(m):
        assert m.apply(v).is_zero()
        assert not v.is_zero()


@given(small_matrix(), st.data())
@settings(max_examples=80, deadline=None)
def test_in_image_matches_brute_force(qm, data):
    q, m = qm
    b = GFVector.from_support(
        q, m.rows,
        [(i, data.draw(st.integers(0, q - 1))) for i in range(m.rows)])
    expected = brute_force_image(q, m, b)
    got, pre = in_image(m, b)
    assert got == expected
    if got:
        assert m.apply(pre).data == b.data


def test_gf3_vector_arithmetic():
    a = GFVector.from_support(3, 4, [(0, 1), (2, 2)])
    b = GFVector.from_support(3, 4, [(0, 2), (1, 1), (2, 2)])
    s = a + b
    assert s.support == [(1, 1), (2, 1)]
    assert a.scale(2).support == [(0, 2), (2, 1)]
    assert (a + a.scale(2)).is_zero()
