"""First-principles checks that do not use the minor formulas.

* arclength tables by adaptive quadrature of the speed,
* curvatures straight from their definition (derivatives of frame vectors
  in arclength, by central differences),
* exact arclength canonical matrices by series reversion of ``s(t)``,
* integration of the Frenet-Serret system back into a curve.
"""

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate
from scipy.interpolate import CubicHermiteSpline, CubicSpline

from . import dsl
from .engine import (
    DEFAULT_ORDER_TOL,
    CanonicalMatrix,
    canonical_matrix,
    canonical_matrix_from_jets,
    curvatures_minor,
    frenet_frame,
    frame_factorization,
)
from .errors import (
    DomainError,
    NonOrthonormalInitialFrame,
    StepUnderflow,
    ZeroVelocity,
)
from .jets import Jet, jet_constant
from .jets import sqrt as jet_sqrt

__all__ = [
    "ArclengthTable",
    "SerretSystem",
    "Reconstruction",
    "RoundTripReport",
    "RDiagonalReport",
    "speed",
    "arclength_table",
    "arclength_canonical_matrix",
    "definitional_curvatures",
    "serret_reconstruct",
    "canonical_matrix_from_samples",
    "roundtrip_check",
    "r_diagonal_check",
]

QUAD_ABS_TOL = 1e-10


def speed(spec, t):
    """``|g'(t)|``."""
    jets = dsl.eval_components(spec, t, 1)
    return math.hypot(*(float(j.coeffs[1]) for j in jets))


# -- arclength ----------------------------------------------------------------

@dataclass(frozen=True)
class ArclengthTable:
    """Samples of ``s(t) = integral_{t0}^{t} |g'|`` on a sorted grid.

    ``t_of`` inverts the table: a cubic Hermite guess (the slopes ``1/|g'|``
    are known exactly) polished by Newton steps on the quadrature.
    """

    spec: dsl.CurveSpec
    t0: float
    t: np.ndarray
    s: np.ndarray
    speeds: np.ndarray
    interpolation: str = "cubic-hermite"

    def s_of(self, t):
        i = int(np.clip(np.searchsorted(self.t, t), 1, len(self.t) - 1)) - 1
        return float(self.s[i] + _integrate_speed(self.spec, self.t[i], t))

    def t_of(self, s):
        if len(self.t) == 1:
            raise ValueError("a single-sample table cannot be inverted")
        guess = CubicHermiteSpline(self.s, self.t, 1.0 / self.speeds)
        t = float(guess(s))
        for _ in range(4):
            step = (self.s_of(t) - s) / speed(self.spec, t)
            t -= step
            if abs(step) <= 1e-15 * max(1.0, abs(t)):
                break
        return t


def _integrate_speed(spec, a, b):
    if a == b:
        return 0.0
    val, _ = integrate.quad(lambda x: speed(spec, x), a, b,
                            epsabs=QUAD_ABS_TOL, epsrel=1e-13, limit=200)
    return val


def arclength_table(spec, t0, grid):
    """Arclength from ``t0`` at every grid point, by adaptive quadrature."""
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise ValueError("grid must be a non-empty 1-d sequence")
    if np.any(np.diff(grid) <= 0):
        raise ValueError("grid must be strictly increasing")
    speeds = np.array([speed(spec, t) for t in grid])
    if np.any(speeds == 0.0):
        bad = float(grid[np.argmax(speeds == 0.0)])
        raise ZeroVelocity(f"velocity vanishes at t={bad!r}", t=bad)
    panels = [_integrate_speed(spec, a, b) for a, b in zip(grid[:-1], grid[1:])]
    s = np.concatenate(([0.0], np.cumsum(panels)))
    s -= s[0] + _integrate_speed(spec, grid[0], t0)
    return ArclengthTable(spec, float(t0), grid, s, speeds)


def _invert_series(s_jet):
    """Coefficients of ``d(sigma)`` with ``s(d(sigma)) = sigma``; ``s(0) = 0``."""
    sc = s_jet.coeffs
    order = s_jet.order
    d = np.zeros(order + 1)
    d[1] = 1.0 / sc[1]
    for k in range(2, order + 1):
        delta = Jet(d)
        comp = jet_constant(sc[order], order)
        for c in sc[order - 1 :: -1]:
            comp = comp * delta + float(c)
        d[k] = -comp.coeffs[k] / sc[1]
    return d


def arclength_canonical_matrix(spec, t0):
    """Canonical matrix of the unit-speed reparametrization at ``g(t0)``.

    The local arclength ``s(t0 + d)`` is integrated from the speed jet,
    reversed to ``d(sigma)``, and the curve is re-evaluated on that jet, so
    the derivatives are exact up to rounding.
    """
    n = spec.n
    comps = dsl.eval_components(spec, t0, n)
    velocity = [j.derivative() for j in comps]
    speed_jet = sum((v * v for v in velocity[1:]), velocity[0] * velocity[0])
    s_jet = jet_sqrt(speed_jet).integral()
    d = _invert_series(s_jet)
    d[0] = t0
    return canonical_matrix_from_jets(dsl.eval_components(spec, t0, n, x=Jet(d)), t0, n)


# -- definitional curvatures --------------------------------------------------

def _frame_matrix(spec, t, tol):
    return frenet_frame(canonical_matrix(spec, t), tol).matrix


def _align(f, ref):
    signs = np.sign(np.sum(f * ref, axis=0))
    signs[signs == 0] = 1.0
    return f * signs


def _frame_derivative(spec, t0, h, f0, sdot, tol):
    fp = _align(_frame_matrix(spec, t0 + h, tol), f0)
    fm = _align(_frame_matrix(spec, t0 - h, tol), f0)
    return (fp - fm) / (2.0 * h * sdot)


def definitional_curvatures(spec, t0, h=None, tol=DEFAULT_ORDER_TOL,
                            min_step=1e-9, agree=1e-6):
    """``k_1 = <T', N_1>``, ``k_i = <N_{i-1}', N_i>`` with ``'`` = d/ds.

    Frame derivatives are central differences in ``t`` divided by
    ``ds/dt = |g'|``, Richardson-extrapolated from steps ``h`` and ``h/2``.
    The default ``h`` is an arclength step of ``1e-4``. The step shrinks
    until both estimates agree to ``agree`` and every stencil point can be
    evaluated.

    Raises
    ------
    OrderDeficient
        If a frame near ``t0`` is undefined.
    StepUnderflow
        If no step down to ``min_step`` gives stable estimates.
    """
    sdot = speed(spec, t0)
    if sdot == 0.0:
        raise ZeroVelocity(f"velocity vanishes at t={t0!r}", t=t0)
    h = 1e-4 / sdot if h is None else float(h)
    h = min(h, 0.5 * (t0 - spec.t_min), 0.5 * (spec.t_max - t0))
    f0 = _frame_matrix(spec, t0, tol)
    while h >= min_step:
        try:
            d1 = _frame_derivative(spec, t0, h, f0, sdot, tol)
            d2 = _frame_derivative(spec, t0, h / 2, f0, sdot, tol)
        except DomainError:
            # a stencil point left the natural domain of the expression
            h /= 4.0
            continue
        if np.max(np.abs(d1 - d2)) <= agree * (1.0 + np.max(np.abs(d2))):
            df = (4.0 * d2 - d1) / 3.0
            n = f0.shape[0]
            return tuple(float(np.dot(df[:, i], f0[:, i + 1])) for i in range(n - 1))
        h /= 4.0
    raise StepUnderflow(f"no stable difference step at t={t0!r}")


# -- Frenet-Serret integration ------------------------------------------------

@dataclass(frozen=True)
class SerretSystem:
    """Curvature functions ``s -> (k_1(s), ..., k_{n-1}(s))`` in R^n."""

    n: int
    kappa: Callable[[float], np.ndarray]

    @classmethod
    def constant(cls, kappas):
        k = np.asarray(kappas, dtype=float)
        return cls(k.size + 1, lambda s: k)

    def generator(self, s):
        """Antisymmetric ``C(s)`` with ``dF/ds = F C``."""
        k = np.asarray(self.kappa(s), dtype=float)
        c = np.zeros((self.n, self.n))
        idx = np.arange(self.n - 1)
        c[idx + 1, idx] = k
        c[idx, idx + 1] = -k
        return c


@dataclass(frozen=True)
class Reconstruction:
    s: np.ndarray           # (m,)
    points: np.ndarray      # (m, n)
    frames: np.ndarray      # (m, n, n)
    max_drift: float        # max |F^T F - I|_F after projection


def _project(f):
    q, r = np.linalg.qr(f)
    return q * np.sign(np.diag(r))


def serret_reconstruct(system, s_span, f0, p0, step=None):
    """Integrate ``F' = F C(s)``, ``g' = T`` with RK4 and QR re-projection."""
    f0 = np.asarray(f0, dtype=float)
    p0 = np.asarray(p0, dtype=float)
    n = system.n
    if f0.shape != (n, n) or p0.shape != (n,):
        raise ValueError(f"initial frame/point do not match dimension {n}")
    if (np.linalg.norm(f0.T @ f0 - np.eye(n)) > 1e-10
            or np.linalg.det(f0) <= 0):
        raise NonOrthonormalInitialFrame(
            "initial frame must be orthonormal with determinant +1")
    s_a, s_b = map(float, s_span)
    span = s_b - s_a
    step = span / 4096 if step is None else float(step)
    if not step > 0:
        raise ValueError("step must be positive")
    m = max(1, int(math.ceil(span / step - 1e-9)))
    h = span / m

    def rhs(s, f):
        return f @ system.generator(s), f[:, 0]

    ss = s_a + h * np.arange(m + 1)
    frames = np.empty((m + 1, n, n))
    points = np.empty((m + 1, n))
    frames[0], points[0] = f0, p0
    f, p = f0.copy(), p0.copy()
    drift = 0.0
    for k in range(m):
        s = ss[k]
        k1f, k1p = rhs(s, f)
        k2f, k2p = rhs(s + h / 2, f + h / 2 * k1f)
        k3f, k3p = rhs(s + h / 2, f + h / 2 * k2f)
        k4f, k4p = rhs(s + h, f + h * k3f)
        p = p + h / 6 * (k1p + 2 * k2p + 2 * k3p + k4p)
        f = _project(f + h / 6 * (k1f + 2 * k2f + 2 * k3f + k4f))
        drift = max(drift, float(np.linalg.norm(f.T @ f - np.eye(n))))
        frames[k + 1], points[k + 1] = f, p
    return Reconstruction(ss, points, frames, drift)


def canonical_matrix_from_samples(s, points, s0, half_width, degree=12):
    """Derivatives at ``s0`` of a sampled curve by a local polynomial fit.

    The window ``[s0 - half_width, s0 + half_width]`` is shifted to stay
    inside the sampled range.
    """
    s = np.asarray(s, dtype=float)
    points = np.asarray(points, dtype=float)
    n = points.shape[1]
    lo = min(max(s0 - half_width, s[0]), s[-1] - 2 * half_width)
    lo = max(lo, s[0])
    mask = (s >= lo - 1e-12) & (s <= lo + 2 * half_width + 1e-12)
    if mask.sum() < 2 * degree:
        raise ValueError("too few samples in the fitting window")
    a = np.empty((n, n))
    for i in range(n):
        poly = np.polynomial.Polynomial.fit(s[mask], points[mask, i], degree)
        for j in range(n):
            poly = poly.deriv()
            a[i, j] = poly(s0)
    return CanonicalMatrix(float(s0), a)


# -- round trip ---------------------------------------------------------------

@dataclass(frozen=True)
class RoundTripReport:
    max_kappa_discrepancy: float
    max_frame_drift: float
    max_position_error: float
    kappas_forward: np.ndarray
    kappas_reconstructed: np.ndarray
    s: np.ndarray


def roundtrip_check(spec, grid, step=None, tol=DEFAULT_ORDER_TOL,
                    dense=513, fit_degree=12):
    """Curvatures -> Frenet-Serret reconstruction -> curvatures again.

    The reconstruction starts from the curve's own frame and position at
    ``grid[0]``, so besides the curvature discrepancy the report also gives
    the distance between the rebuilt and the original curve.
    """
    grid = np.asarray(grid, dtype=float)
    t_dense = np.union1d(np.linspace(grid[0], grid[-1], dense), grid)
    table = arclength_table(spec, grid[0], t_dense)
    k_dense = np.array([curvatures_minor(canonical_matrix(spec, t), tol=tol).kappas
                        for t in t_dense])
    kappa_of_s = CubicSpline(table.s, k_dense, axis=0)
    system = SerretSystem(spec.n, kappa_of_s)

    f0 = frenet_frame(canonical_matrix(spec, grid[0]), tol).matrix
    p0 = np.array(dsl.eval_point(spec, grid[0]))
    s_end = float(table.s[-1])
    rec = serret_reconstruct(system, (0.0, s_end), f0, p0, step)

    kmax = float(np.max(np.abs(k_dense)))
    half_width = min(0.25 * s_end, 0.5 / max(kmax, 1e-12))
    s_grid = np.interp(grid, t_dense, table.s)
    k_fwd = np.array([curvatures_minor(canonical_matrix(spec, t), tol=tol).kappas
                      for t in grid])
    k_rec = np.array([
        curvatures_minor(canonical_matrix_from_samples(
            rec.s, rec.points, s0, half_width, fit_degree), tol=tol).kappas
        for s0 in s_grid])
    floor = 1e-6 * np.max(np.abs(k_fwd), axis=0)
    rel = np.abs(k_rec - k_fwd) / np.maximum(np.abs(k_fwd), floor)

    truth = np.array([dsl.eval_point(spec, t) for t in t_dense])
    rec_at = np.column_stack([np.interp(table.s, rec.s, rec.points[:, i])
                              for i in range(spec.n)])
    # linear interpolation between RK4 nodes limits this to ~h^2 accuracy
    pos_err = float(np.max(np.linalg.norm(rec_at - truth, axis=1)))
    return RoundTripReport(float(np.max(rel)), rec.max_drift, pos_err,
                           k_fwd, k_rec, s_grid)


# -- R-diagonal check ---------------------------------------------------------

@dataclass(frozen=True)
class RDiagonalReport:
    max_r11_error: float
    max_rel_error: float
    s: np.ndarray
    r_diagonals: np.ndarray
    kappa_products: np.ndarray


def r_diagonal_check(spec, t_start, t_end, samples=21, tol=DEFAULT_ORDER_TOL):
    """Compare ``R_jj`` of the arclength canonical matrix with ``prod k_i``.

    Samples are spaced uniformly in arclength between ``t_start`` and
    ``t_end``; curvatures come from the minor formulas in the original
    parametrization.
    """
    t_nodes = np.linspace(t_start, t_end, 65)
    table = arclength_table(spec, t_start, t_nodes)
    s_samples = np.linspace(0.0, table.s[-1], samples)
    diags, prods = [], []
    for s in s_samples:
        t = table.t_of(s)
        _, r, _ = frame_factorization(arclength_canonical_matrix(spec, t), tol)
        kappas = curvatures_minor(canonical_matrix(spec, t), tol=tol).kappas
        diags.append(np.diag(r))
        prods.append(np.concatenate(([1.0], np.cumprod(kappas))))
    diags = np.array(diags)
    prods = np.array(prods)
    r11 = float(np.max(np.abs(diags[:, 0] - 1.0)))
    rel = np.abs(diags[:, 1:] - prods[:, 1:]) / np.abs(prods[:, 1:])
    return RDiagonalReport(r11, float(np.max(rel)), s_samples, diags, prods)
