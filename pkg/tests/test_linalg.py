import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from frenet_kit import linalg
from frenet_kit.errors import DimensionMismatch, NonSquare, ZeroFirstColumn

def WORKED_A(t):
    # canonical matrix of (t, t^2, t^3, t^4), written out by hand
    return np.array([
        [1, 0, 0, 0],
        [2 * t, 2, 0, 0],
        [3 * t**2, 6 * t, 6, 0],
        [4 * t**3, 12 * t**2, 24 * t, 24],
    ], dtype=float)


# -- determinant ------------------------------------------------------------------

def test_determinant_examples():
    assert linalg.determinant(np.eye(4)) == 1.0
    for t in (-1.0, 0.0, 0.3, 2.0):
        assert linalg.determinant(WORKED_A(t)) == pytest.approx(288.0, rel=1e-14)


def test_determinant_singular_repeated_row():
    rng = np.random.default_rng(3)
    for _ in range(20):
        m = rng.normal(size=(3, 3))
        m[2] = m[0]
        bound = np.prod(np.linalg.norm(m, axis=1))
        assert abs(linalg.determinant(m)) <= 1e-12 * bound


def test_determinant_rejects_non_square():
    with pytest.raises(NonSquare):
        linalg.determinant(np.ones((2, 3)))


_mat = st.integers(1, 7).flatmap(lambda n: arrays(
    np.float64, (n, n),
    # 6 decimals keeps column norms clear of underflow
    elements=st.floats(-10, 10, allow_nan=False).map(lambda x: round(x, 6))))


@settings(max_examples=200)
@given(_mat)
def test_determinant_matches_numpy(m):
    bound = np.prod(np.linalg.norm(m, axis=0))
    assert abs(linalg.determinant(m) - np.linalg.det(m)) <= 1e-12 * bound


# -- generalized cross product ------------------------------------------------------

def test_cross_examples():
    assert linalg.generalized_cross([[1, 0, 0], [0, 1, 0]]).tolist() == [0, 0, 1]
    a, b = 2.0, -3.0
    assert linalg.generalized_cross([[a, b]]).tolist() == [-b, a]


def test_cross_matches_numpy_cross():
    rng = np.random.default_rng(0)
    for _ in range(10):
        u, v = rng.normal(size=(2, 3))
        np.testing.assert_allclose(linalg.generalized_cross([u, v]), np.cross(u, v),
                                   rtol=1e-13, atol=1e-14)


def test_cross_determinant_identity_n4():
    rng = np.random.default_rng(1)
    vs = list(rng.normal(size=(3, 4)))
    p = linalg.generalized_cross(vs)
    for _ in range(10):
        w = rng.normal(size=4)
        want = np.linalg.det(np.column_stack(vs + [w]))
        assert np.dot(p, w) == pytest.approx(want, rel=1e-10)


@settings(max_examples=100)
@given(st.integers(2, 7), st.integers(0, 2**32 - 1))
def test_cross_properties(n, seed):
    rng = np.random.default_rng(seed)
    vs = rng.normal(size=(n - 1, n))
    p = linalg.generalized_cross(list(vs))
    # orthogonal to every input
    scale = np.linalg.norm(p) * np.max(np.linalg.norm(vs, axis=1))
    assert np.all(np.abs(vs @ p) <= 1e-12 * scale)
    # positively oriented, with length equal to the spanned volume
    assert np.linalg.det(np.column_stack(list(vs) + [p])) > 0
    vol = math.sqrt(max(np.linalg.det(vs @ vs.T), 0.0))
    assert np.linalg.norm(p) == pytest.approx(vol, rel=1e-9)
    # alternating: swapping two inputs flips the sign
    if n >= 3:
        swapped = vs.copy()
        swapped[[0, 1]] = swapped[[1, 0]]
        np.testing.assert_allclose(linalg.generalized_cross(list(swapped)), -p,
                                   rtol=1e-12, atol=1e-12 * np.linalg.norm(p))


def test_cross_rejects_bad_shapes():
    with pytest.raises(DimensionMismatch):
        linalg.generalized_cross([[1, 0, 0]])
    with pytest.raises(DimensionMismatch):
        linalg.generalized_cross([[1, 0], [0, 1, 2]])


# -- Gram matrix and minors -------------------------------------------------------------

def test_gram_examples():
    np.testing.assert_array_equal(linalg.gram_matrix(np.eye(3)), np.eye(3))
    v = np.array([1.0, 2.0, 2.0])
    assert linalg.gram_matrix([v]).tolist() == [[9.0]]


def test_gram_worked_example_at_zero():
    b = linalg.gram_matrix(WORKED_A(0.0))
    assert linalg.leading_principal_minors(b)[:3] == [1.0, 4.0, 144.0]


def test_minors_examples():
    assert linalg.leading_principal_minors(np.eye(5)) == [1.0] * 5
    assert linalg.leading_principal_minors(np.diag([2.0, 3.0, 4.0])) == [2.0, 6.0, 24.0]
    minors = linalg.leading_principal_minors(linalg.gram_matrix(WORKED_A(1.0)))
    np.testing.assert_allclose(minors, [30, 620, 9936, 288**2], rtol=1e-13)


@settings(max_examples=100)
@given(st.integers(1, 6), st.integers(0, 2**32 - 1))
def test_gram_properties(n, seed):
    a = np.random.default_rng(seed).normal(size=(n, n))
    g = linalg.gram_matrix(a)
    np.testing.assert_array_equal(g, g.T)
    np.testing.assert_allclose(g, a.T @ a, rtol=1e-14, atol=1e-13)
    minors = linalg.leading_principal_minors(g)
    scales = np.cumprod(np.diag(g))
    assert all(m >= -1e-12 * s for m, s in zip(minors, scales))
    assert minors[-1] == pytest.approx(np.linalg.det(a) ** 2, rel=1e-8)


def test_as_columns():
    np.testing.assert_array_equal(linalg.as_columns([[1, 2], [3, 4]]), [[1, 3], [2, 4]])
    with pytest.raises(DimensionMismatch):
        linalg.as_columns([])


# -- QR -----------------------------------------------------------------------------------

def test_qr_identity():
    f = linalg.gram_schmidt_qr(np.eye(3))
    np.testing.assert_array_equal(f.q, np.eye(3))
    np.testing.assert_array_equal(f.r_mat, np.eye(3))
    assert f.full_rank and f.rank == 3


def test_qr_hand_example():
    f = linalg.gram_schmidt_qr([[1, 1, 0], [0, 1, 0]])
    s = 1 / math.sqrt(2)
    np.testing.assert_allclose(f.r_mat, [[math.sqrt(2), s], [0, s]], rtol=1e-15)
    np.testing.assert_allclose(f.q, np.column_stack([[s, s, 0], [-s, s, 0]]), atol=1e-15)
    np.testing.assert_allclose(f.q.T @ f.q, np.eye(2), atol=1e-15)
    np.testing.assert_allclose(f.q @ f.r_mat, [[1, 0], [1, 1], [0, 0]], atol=1e-12)


def test_qr_flags_dependent_column():
    v = np.array([1.0, -2.0, 0.5])
    f = linalg.gram_schmidt_qr([v, 2 * v])
    assert f.rank_flags == (False, True)
    assert f.rank == 1 and not f.full_rank


def test_qr_flags_everything_after_first_dependence():
    f = linalg.gram_schmidt_qr([[1, 0, 0], [2, 0, 0], [0, 1, 0]])
    assert f.rank_flags == (False, True, True)


def test_qr_zero_first_column():
    with pytest.raises(ZeroFirstColumn):
        linalg.gram_schmidt_qr([[0, 0, 0], [1, 0, 0]])


def test_qr_too_many_columns():
    with pytest.raises(DimensionMismatch):
        linalg.gram_schmidt_qr(np.ones((2, 3)))


@settings(max_examples=150)
@given(st.integers(1, 8), st.integers(0, 2**32 - 1))
def test_qr_properties(n, seed):
    rng = np.random.default_rng(seed)
    m = rng.integers(1, n + 1)
    a = rng.normal(size=(n, m))
    f = linalg.gram_schmidt_qr(a)
    assert f.full_rank
    assert np.linalg.norm(f.q.T @ f.q - np.eye(m)) <= 1e-10
    assert np.all(np.tril(f.r_mat, -1) == 0.0)
    assert np.all(np.diag(f.r_mat) > 0)
    np.testing.assert_allclose(f.q @ f.r_mat, a, atol=1e-12 * np.linalg.norm(a))
    # R agrees with numpy's Householder R up to column signs
    r_np = np.linalg.qr(a, mode="r")
    np.testing.assert_allclose(f.r_mat, r_np * np.sign(np.diag(r_np))[:, None],
                               atol=1e-10 * np.linalg.norm(a))
