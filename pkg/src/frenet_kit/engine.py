"""Frenet frames and generalized curvatures of curves in R^n.

The main route works from the Gram matrix ``B = A^T A`` of the canonical
matrix ``A(t) = [g'(t) | ... | g^(n)(t)]``. With ``D_i`` the i-th leading
principal minor of ``B`` and ``D_0 = 1``::

    k_1     = sqrt(D_2) / |g'|^3
    k_i     = sqrt(D_{i+1} D_{i-1}) / (|g'| D_i)          2 <= i <= n-2
    k_{n-1} = det(A) sqrt(D_{n-2}) / (|g'| D_{n-1})

No orthogonalization is needed. :func:`curvatures_qr` computes the same
numbers from the diagonal of the triangular factor of ``A = F R`` and serves
as an independent check.
"""

import math
from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from . import dsl
from .errors import OrderDeficient, WrongDimension, ZeroVelocity
from .jets import extract_derivatives
from .linalg import (
    DEFAULT_DEPENDENCE_TOL,
    determinant,
    generalized_cross,
    gram_matrix,
    gram_schmidt_qr,
    leading_principal_minors,
)

__all__ = [
    "MAX_DIM",
    "DEFAULT_ORDER_TOL",
    "CanonicalMatrix",
    "GramData",
    "FrenetFrame",
    "CurvatureProfile",
    "Segment",
    "OrderSegmentation",
    "canonical_matrix",
    "canonical_matrix_from_jets",
    "gram_data",
    "detect_order",
    "normalized_volumes",
    "curvatures_minor",
    "curvatures_qr",
    "curvatures_degenerate",
    "curvatures",
    "frenet_frame",
    "frame_factorization",
    "classical_r3",
    "segment_by_order",
]

MAX_DIM = 12

# Threshold on det M_j / prod_{i<=j} |g^(i)|^2, i.e. a squared residual of
# about 1e-9 per column. The ratio is taken from a QR factorization of the
# column-normalized A, whose rounding floor is near 1e-32; the Gram minors
# themselves bottom out near 1e-16 and could not resolve this threshold.
DEFAULT_ORDER_TOL = 1e-18


@dataclass(frozen=True)
class CanonicalMatrix:
    at_t: float
    a: np.ndarray

    @property
    def n(self):
        return self.a.shape[0]

    @property
    def speed(self):
        return float(np.linalg.norm(self.a[:, 0]))


@dataclass(frozen=True)
class GramData:
    """``B = A^T A`` with its leading principal minors and ``det A``.

    ``scales[i]`` is the Hadamard bound ``prod_{j<=i+1} |g^(j)|^2`` for
    ``minors[i]``. ``volumes[i]`` is the scale-free ratio
    ``minors[i] / scales[i]``, computed independently from a QR
    factorization so that it stays accurate down to ~1e-32.
    """

    b: np.ndarray
    minors: Tuple[float, ...]
    det_a: float
    scales: Tuple[float, ...]
    volumes: Tuple[float, ...]

    @property
    def normalized(self):
        return self.volumes


@dataclass(frozen=True)
class FrenetFrame:
    t_vec: np.ndarray
    normals: Tuple[np.ndarray, ...]
    frame_det: float

    @property
    def matrix(self):
        """Frame matrix ``F = [T | N_1 | ... | N_{n-1}]``."""
        return np.column_stack((self.t_vec,) + tuple(self.normals))


@dataclass(frozen=True)
class CurvatureProfile:
    """Curvatures at one parameter value.

    ``kappas`` has ``n - 1`` entries on a full-order sample and ``order - 1``
    entries in degenerate mode. ``last_zero`` marks a ``k_{n-1}`` that was
    set to exactly 0 because ``det A`` vanished numerically.
    """

    t: float
    kappas: Tuple[float, ...]
    order: int
    method: str
    degenerate: bool = False
    last_zero: bool = False


# -- canonical matrix and Gram data -------------------------------------------

def canonical_matrix_from_jets(component_jets, t, n=None):
    """Assemble ``A`` from per-component jets; column j is the j-th derivative."""
    n = len(component_jets) if n is None else n
    a = np.array([extract_derivatives(j, n) for j in component_jets], dtype=float)
    if not np.any(a[:, 0]):
        raise ZeroVelocity(f"velocity vanishes at t={t!r}", t=t)
    return CanonicalMatrix(float(t), a)


def canonical_matrix(spec, t0, max_dim=MAX_DIM):
    """Canonical matrix of ``spec`` at ``t0`` from exact jet derivatives."""
    n = spec.n
    if n > max_dim:
        raise WrongDimension(
            f"dimension {n} exceeds the cap of {max_dim}; derivatives of order "
            f"{n} overflow quickly, raise max_dim explicitly if you need it")
    return canonical_matrix_from_jets(dsl.eval_components(spec, t0, n), t0, n)


def normalized_volumes(a):
    """``det M_j / prod_{i<=j} |a_i|^2`` for j = 1..n, by Householder QR.

    Columns are scaled to unit length first, so an exactly dependent column
    leaves a residual of a few ulps and a ratio near 1e-32.
    """
    norms = np.linalg.norm(a, axis=0)
    scaled = np.divide(a, norms, out=np.zeros_like(a), where=norms > 0)
    r = np.linalg.qr(scaled, mode="r")
    return tuple(float(v) for v in np.cumprod(np.diag(r) ** 2))


def gram_data(cm):
    a = cm.a
    b = gram_matrix(a)
    minors = leading_principal_minors(b)
    scales = np.cumprod(np.diag(b))
    return GramData(b, tuple(minors), determinant(a),
                    tuple(float(s) for s in scales), normalized_volumes(a))


def detect_order(gd, tol=DEFAULT_ORDER_TOL):
    """Largest ``r`` with ``det M_j > tol * scale_j`` for every ``j <= r``.

    The comparison uses ``gd.volumes`` rather than the Gram minors, which
    carry too much rounding error for a threshold this small.

    Always at least 1: a curve point with nonzero velocity is regular of
    order 1 even if rounding says otherwise.
    """
    r = 0
    for v in gd.volumes:
        if not v > tol:
            break
        r += 1
    return max(r, 1)


# -- curvature formulas -------------------------------------------------------

def _minor_kappa(i, d, speed):
    # d[k] = det M_k with d[0] = 1
    if i == 1:
        return math.sqrt(d[2]) / speed**3
    return math.sqrt(d[i + 1] * d[i - 1]) / (speed * d[i])


def curvatures_minor(cm, gd=None, tol=DEFAULT_ORDER_TOL):
    """Generalized curvatures from leading principal minors of ``A^T A``.

    Raises
    ------
    OrderDeficient
        If any of ``det M_1 .. det M_{n-1}`` is below tolerance.
    """
    gd = gram_data(cm) if gd is None else gd
    n = cm.n
    r = detect_order(gd, tol)
    if r < n - 1:
        raise OrderDeficient(
            f"curve has order {r} < {n - 1} at t={cm.at_t!r}; use "
            "segment_by_order and degenerate mode for lower-order pieces",
            t=cm.at_t, order=r)
    d = (1.0,) + gd.minors
    speed = cm.speed
    kappas = [_minor_kappa(i, d, speed) for i in range(1, n - 1)]
    last_zero = r < n
    if last_zero:
        kappas.append(0.0)
    else:
        kappas.append(gd.det_a * math.sqrt(d[n - 2]) / (speed * d[n - 1]))

    if n >= 4:
        assert math.isclose(kappas[1], math.sqrt(d[3]) / d[2], rel_tol=1e-8), \
            "k_2 disagrees with sqrt(det M_3)/det M_2"
    elif n == 3 and not last_zero:
        assert math.isclose(kappas[1], gd.det_a / d[2], rel_tol=1e-8), \
            "k_2 disagrees with det A/det M_2"
    return CurvatureProfile(cm.at_t, tuple(kappas), r, "minor-formula",
                            degenerate=False, last_zero=last_zero)


def frame_factorization(cm, tol):
    """Frame matrix ``F`` and upper-triangular ``R`` with ``A = F R``.

    Returns ``(F, R, order)`` where ``order`` is ``n - 1`` or ``n``.
    """
    n = cm.n
    a = cm.a
    qr = gram_schmidt_qr(a[:, : n - 1], tol=DEFAULT_DEPENDENCE_TOL)
    if not qr.full_rank:
        raise OrderDeficient(
            f"derivatives 1..{n - 1} are dependent at t={cm.at_t!r}",
            t=cm.at_t, order=qr.rank)
    f = np.column_stack([qr.q, generalized_cross(qr.q)])
    r = f.T @ a
    r[np.tril_indices(n, -1)] = 0.0
    r[: n - 1, : n - 1] = qr.r_mat

    # same scale-free order test as detect_order
    vols = normalized_volumes(a)
    order = 1
    for j in range(1, n):
        if vols[j] > tol:
            order = j + 1
        else:
            break
    if order < n - 1:
        raise OrderDeficient(
            f"curve has order {order} < {n - 1} at t={cm.at_t!r}",
            t=cm.at_t, order=order)
    return f, r, order


def curvatures_qr(cm, tol=DEFAULT_ORDER_TOL):
    """Curvatures as ratios of diagonal entries of ``R`` in ``A = F R``.

    The last frame vector comes from the generalized cross product, so the
    sign of ``R_nn`` (and of ``k_{n-1}``) is fixed by orientation alone.
    """
    n = cm.n
    _, r, order = frame_factorization(cm, tol)
    diag = np.diag(r)
    speed = diag[0]
    kappas = [float(diag[i + 1] / (speed * diag[i])) for i in range(n - 1)]
    last_zero = order < n
    if last_zero:
        kappas[-1] = 0.0
    return CurvatureProfile(cm.at_t, tuple(kappas), order, "qr-path",
                            degenerate=False, last_zero=last_zero)


def curvatures_degenerate(cm, gd, r):
    """Curvatures ``k_1 .. k_{r-1}`` of a curve of constant order ``r <= n-2``.

    The caller is responsible for knowing that the order stays ``r`` on a
    neighbourhood (see :func:`segment_by_order`); a single sample cannot
    certify that.
    """
    n = cm.n
    if r <= 1:
        raise OrderDeficient(
            f"order {r} at t={cm.at_t!r}: a straight piece has no curvatures",
            t=cm.at_t, order=r)
    if r > n - 2:
        raise ValueError(f"order {r} is not degenerate in R^{n}")
    d = (1.0,) + gd.minors
    speed = cm.speed
    kappas = tuple(_minor_kappa(i, d, speed) for i in range(1, r))
    return CurvatureProfile(cm.at_t, kappas, r, "minor-formula", degenerate=True)


def curvatures(spec, t, method="minor", tol=DEFAULT_ORDER_TOL, degenerate_ok=False):
    """Curvature profile of ``spec`` at ``t`` in one call.

    ``method`` is ``"minor"`` or ``"qr"``. With ``degenerate_ok`` a sample of
    order ``r <= n-2`` returns the truncated profile instead of raising.
    """
    cm = canonical_matrix(spec, t)
    gd = gram_data(cm)
    r = detect_order(gd, tol)
    if r < cm.n - 1:
        if degenerate_ok:
            return curvatures_degenerate(cm, gd, r)
        raise OrderDeficient(
            f"curve has order {r} < {cm.n - 1} at t={t!r}; rerun in degenerate "
            "mode on a segment of constant order (see segment_by_order)",
            t=t, order=r)
    if method == "minor":
        return curvatures_minor(cm, gd, tol)
    if method == "qr":
        return curvatures_qr(cm, tol)
    raise ValueError(f"unknown method {method!r}")


# -- frames -------------------------------------------------------------------

def frenet_frame(cm, tol=DEFAULT_ORDER_TOL):
    """Positively oriented Frenet frame: Gram-Schmidt plus a cross product."""
    f, _, _ = frame_factorization(cm, tol)
    return FrenetFrame(f[:, 0].copy(), tuple(f[:, k].copy() for k in range(1, cm.n)),
                       determinant(f))


def classical_r3(cm):
    """Curvature and torsion of a space curve from the textbook formulas."""
    if cm.n != 3:
        raise WrongDimension(f"classical formulas need n = 3, got n = {cm.n}")
    d1, d2, d3 = cm.a.T
    c = np.cross(d1, d2)
    cc = float(np.dot(c, c))
    if cc == 0.0:
        raise OrderDeficient(f"g' and g'' are parallel at t={cm.at_t!r}",
                             t=cm.at_t, order=1)
    kappa = math.sqrt(cc) / float(np.linalg.norm(d1)) ** 3
    tau = float(np.dot(c, d3)) / cc
    return kappa, tau


# -- order segmentation -------------------------------------------------------

@dataclass(frozen=True)
class Segment:
    start: int          # first grid index
    stop: int           # one past the last grid index
    order: int
    t_start: float
    t_end: float


@dataclass(frozen=True)
class OrderSegmentation:
    """Per-sample regularity order and maximal runs of constant order.

    An order of 0 marks a sample where the velocity vanishes.
    """

    grid: Tuple[float, ...]
    orders: Tuple[int, ...]
    segments: Tuple[Segment, ...] = field(default=())


def segment_by_order(spec, grid, tol=DEFAULT_ORDER_TOL):
    grid = tuple(float(t) for t in grid)
    if any(b < a for a, b in zip(grid, grid[1:])):
        raise ValueError("grid must be sorted")
    orders = []
    for t in grid:
        try:
            orders.append(detect_order(gram_data(canonical_matrix(spec, t)), tol))
        except ZeroVelocity:
            orders.append(0)
    segments = []
    start = 0
    for i in range(1, len(grid) + 1):
        if i == len(grid) or orders[i] != orders[start]:
            segments.append(Segment(start, i, orders[start], grid[start], grid[i - 1]))
            start = i
    return OrderSegmentation(grid, tuple(orders), tuple(segments))

