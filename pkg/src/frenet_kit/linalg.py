"""Small dense kernels: determinants, Gram matrices, cross products, QR.

Matrices are plain 2-d ``numpy`` arrays. Functions taking "a sequence of
vectors" accept either a list of 1-d vectors or a 2-d array whose *columns*
are the vectors.
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .errors import DimensionMismatch, NonSquare, ZeroFirstColumn

__all__ = [
    "QRFactors",
    "as_columns",
    "determinant",
    "generalized_cross",
    "gram_matrix",
    "leading_principal_minors",
    "gram_schmidt_qr",
    "DEFAULT_DEPENDENCE_TOL",
]

DEFAULT_DEPENDENCE_TOL = 1e-9


def as_columns(vectors):
    """Stack ``vectors`` as the columns of a float array of shape (n, m)."""
    if isinstance(vectors, np.ndarray) and vectors.ndim == 2:
        return np.asarray(vectors, dtype=float)
    vs = [np.asarray(v, dtype=float) for v in vectors]
    if not vs:
        raise DimensionMismatch("empty sequence of vectors")
    n = vs[0].shape
    if any(v.ndim != 1 or v.shape != n for v in vs):
        raise DimensionMismatch(
            f"vectors must be 1-d and equally long, got shapes {[v.shape for v in vs]}")
    return np.column_stack(vs)


def determinant(m):
    """Determinant by LU factorization with partial pivoting."""
    a = np.array(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NonSquare(f"determinant of a non-square matrix of shape {a.shape}")
    n = a.shape[0]
    det = 1.0
    for k in range(n):
        p = k + int(np.argmax(np.abs(a[k:, k])))
        pivot = a[p, k]
        if pivot == 0.0:
            return 0.0
        if p != k:
            a[[k, p]] = a[[p, k]]
            det = -det
        det *= pivot
        if k + 1 < n:
            factors = a[k + 1:, k] / pivot
            a[k + 1:, k:] -= np.outer(factors, a[k, k:])
    return float(det)


def generalized_cross(vectors):
    """Cross product of ``n - 1`` vectors in R^n.

    Component ``k`` is the cofactor of the formal symbol ``e_k`` when the
    determinant ``det[v_1 | ... | v_{n-1} | e]`` is expanded along its last
    column, so that ``<cross(v), w> = det[v_1 | ... | v_{n-1} | w]``.
    """
    v = as_columns(vectors)
    n, m = v.shape
    if n < 2 or m != n - 1:
        raise DimensionMismatch(
            f"need n-1 vectors of length n >= 2, got {m} vectors of length {n}")
    out = np.empty(n)
    for k in range(n):
        minor = np.delete(v, k, axis=0)
        sign = -1.0 if (k + n) % 2 == 0 else 1.0
        out[k] = sign * determinant(minor)
    return out


def gram_matrix(vectors):
    """Matrix of pairwise inner products ``G[i, j] = <v_i, v_j>``."""
    v = as_columns(vectors)
    m = v.shape[1]
    g = np.empty((m, m))
    for i in range(m):
        for j in range(i, m):
            g[i, j] = g[j, i] = float(np.dot(v[:, i], v[:, j]))
    return g


def leading_principal_minors(b):
    """``[det M_1, ..., det M_n]`` where ``M_i`` is the top-left i x i block.

    Each block gets its own LU factorization; at the sizes used here (n <= 12)
    that costs nothing and keeps pivoting free to act on every block.
    """
    b = np.asarray(b, dtype=float)
    if b.ndim != 2 or b.shape[0] != b.shape[1]:
        raise NonSquare(f"minors of a non-square matrix of shape {b.shape}")
    return [determinant(b[:i, :i]) for i in range(1, b.shape[0] + 1)]


@dataclass(frozen=True)
class QRFactors:
    """Result of :func:`gram_schmidt_qr`.

    ``q`` holds the orthonormal columns found before the first dependent
    input column; ``r_mat`` is the matching square upper-triangular factor.
    ``rank_flags[j]`` is True for the first dependent column and every
    column after it, none of which were factorized.
    """

    q: np.ndarray
    r_mat: np.ndarray
    rank_flags: Tuple[bool, ...]

    @property
    def rank(self):
        return self.q.shape[1]

    @property
    def full_rank(self):
        return not any(self.rank_flags)


def gram_schmidt_qr(vectors, tol=DEFAULT_DEPENDENCE_TOL):
    """Modified Gram-Schmidt with one re-orthogonalization pass.

    A column whose residual norm falls to ``tol`` times its original norm or
    below is flagged dependent and ends the factorization.

    Raises
    ------
    ZeroFirstColumn
        If the first column has norm at most ``tol``.
    """
    v = as_columns(vectors)
    n, r = v.shape
    if r > n:
        raise DimensionMismatch(f"{r} columns cannot be independent in R^{n}")
    q = np.zeros((n, r))
    rm = np.zeros((r, r))
    flags = [False] * r
    k = 0
    for j in range(r):
        w = v[:, j].copy()
        original = float(np.linalg.norm(w))
        if j == 0 and original <= tol:
            raise ZeroFirstColumn(f"first column has norm {original!r}")
        for _ in range(2):
            for i in range(j):
                c = float(np.dot(q[:, i], w))
                rm[i, j] += c
                w -= c * q[:, i]
        norm = float(np.linalg.norm(w))
        if norm <= tol * original:
            flags[j:] = [True] * (r - j)
            break
        rm[j, j] = norm
        q[:, j] = w / norm
        k = j + 1
    return QRFactors(q[:, :k].copy(), rm[:k, :k].copy(), tuple(flags))
