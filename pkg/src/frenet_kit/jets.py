"""Truncated Taylor series ("jets") for exact forward-mode derivatives.

A :class:`Jet` of order ``K`` holds the normalized Taylor coefficients
``c_k = f^(k)(t0) / k!`` for ``k = 0..K``. Arithmetic and the elementary
functions below propagate those coefficients exactly (up to rounding), so
evaluating an expression on ``jet_variable(t0, K)`` yields its first ``K``
derivatives at ``t0`` without finite differencing.

    >>> j = sin(jet_variable(0.0, 3))
    >>> j.coeffs.tolist()
    [0.0, 1.0, 0.0, -0.16666666666666666]
"""

import math
from numbers import Real

import numpy as np

from .errors import DivisionByZeroConstantTerm, DomainError, OrderTooLow

__all__ = [
    "Jet",
    "jet_variable",
    "jet_constant",
    "jet_arith",
    "jet_elementary",
    "extract_derivatives",
    "sin",
    "cos",
    "exp",
    "log",
    "sqrt",
    "power",
]


class Jet:
    """Immutable truncated Taylor expansion of a scalar function.

    Parameters
    ----------
    coeffs : sequence of float
        Normalized Taylor coefficients ``c_0 .. c_K``.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs):
        c = np.array(coeffs, dtype=float)
        if c.ndim != 1 or c.size == 0:
            raise ValueError("a jet needs a non-empty 1-d coefficient sequence")
        if not np.all(np.isfinite(c)):
            raise DomainError(f"non-finite Taylor coefficient in {c.tolist()}",
                              value=float(c[0]))
        c.setflags(write=False)
        self._c = c

    @property
    def coeffs(self):
        return self._c

    @property
    def order(self):
        return self._c.size - 1

    @property
    def value(self):
        return float(self._c[0])

    def __repr__(self):
        return f"Jet({self._c.tolist()})"

    def __eq__(self, other):
        if not isinstance(other, Jet):
            return NotImplemented
        return self.order == other.order and bool(np.all(self._c == other._c))

    __hash__ = None

    def _coerce(self, other):
        if isinstance(other, Jet):
            if other.order != self.order:
                raise ValueError(
                    f"jet orders differ: {self.order} vs {other.order}")
            return other
        if isinstance(other, Real):
            return jet_constant(float(other), self.order)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Jet(self._c + other._c)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Jet(self._c - other._c)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Jet(other._c - self._c)

    def __mul__(self, other):
        if isinstance(other, Real):
            return Jet(self._c * float(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Jet(_cauchy(self._c, other._c))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Real):
            if other == 0:
                raise DivisionByZeroConstantTerm("division of a jet by zero")
            return Jet(self._c / float(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Jet(_divide(self._c, other._c))

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Jet(_divide(other._c, self._c))

    def __neg__(self):
        return Jet(-self._c)

    def __pos__(self):
        return self

    def __pow__(self, exponent):
        if isinstance(exponent, Jet):
            raise TypeError("jet exponents must be constant reals")
        return power(self, exponent)

    def derivative(self):
        """Jet of ``f'`` at the same point, one order lower."""
        if self.order == 0:
            raise OrderTooLow("cannot differentiate an order-0 jet")
        return Jet(self._c[1:] * np.arange(1, self._c.size))

    def integral(self, constant=0.0):
        """Jet of the antiderivative taking ``constant`` at the expansion point."""
        return Jet(np.concatenate(([constant], self._c / np.arange(1, self._c.size + 1))))


def jet_constant(value, order):
    c = np.zeros(order + 1)
    c[0] = value
    return Jet(c)


def jet_variable(t0, order):
    """Jet of the identity ``f(t) = t`` expanded at ``t0``."""
    if order < 0:
        raise ValueError("jet order must be non-negative")
    c = np.zeros(order + 1)
    c[0] = t0
    if order >= 1:
        c[1] = 1.0
    return Jet(c)


# -- coefficient recurrences --------------------------------------------------

def _cauchy(a, b):
    return np.convolve(a, b)[: a.size]


def _divide(a, b):
    b0 = b[0]
    if b0 == 0.0:
        raise DivisionByZeroConstantTerm(
            "divisor jet has zero constant term")
    q = np.empty_like(a)
    for k in range(a.size):
        q[k] = (a[k] - np.dot(b[1 : k + 1], q[k - 1 :: -1][:k])) / b0
    return q


def _exp(a):
    e = np.empty_like(a)
    e[0] = math.exp(a[0])
    ja = np.arange(a.size) * a
    for k in range(1, a.size):
        e[k] = np.dot(ja[1 : k + 1], e[k - 1 :: -1][:k]) / k
    return e


def _log(a):
    a0 = float(a[0])
    if not a0 > 0.0:
        raise DomainError(f"log of non-positive value {a0!r}", value=a0)
    l = np.empty_like(a)
    l[0] = math.log(a0)
    for k in range(1, a.size):
        # a = exp(l)  =>  k a_k = sum_{j=1..k} j l_j a_{k-j}
        acc = sum(j * l[j] * a[k - j] for j in range(1, k))
        l[k] = (a[k] - acc / k) / a0
    return l


def _sincos(a):
    s = np.empty_like(a)
    c = np.empty_like(a)
    s[0] = math.sin(a[0])
    c[0] = math.cos(a[0])
    ja = np.arange(a.size) * a
    for k in range(1, a.size):
        s[k] = np.dot(ja[1 : k + 1], c[k - 1 :: -1][:k]) / k
        c[k] = -np.dot(ja[1 : k + 1], s[k - 1 :: -1][:k]) / k
    return s, c


def _sqrt(a):
    a0 = float(a[0])
    if not a0 > 0.0:
        raise DomainError(f"sqrt of non-positive value {a0!r}", value=a0)
    r = np.empty_like(a)
    r[0] = math.sqrt(a0)
    for k in range(1, a.size):
        acc = sum(r[j] * r[k - j] for j in range(1, k))
        r[k] = (a[k] - acc) / (2.0 * r[0])
    return r


# -- public elementary functions ----------------------------------------------

def sin(a):
    return Jet(_sincos(a.coeffs)[0])


def cos(a):
    return Jet(_sincos(a.coeffs)[1])


def exp(a):
    return Jet(_exp(a.coeffs))


def log(a):
    return Jet(_log(a.coeffs))


def sqrt(a):
    return Jet(_sqrt(a.coeffs))


def power(a, exponent):
    """Raise a jet to a constant real power.

    Integer exponents use repeated squaring, so polynomials stay exact and
    the base may have a zero constant term. Any other exponent goes through
    ``exp(exponent * log(a))`` and needs a positive constant term.
    """
    exponent = float(exponent)
    if exponent.is_integer():
        m = int(exponent)
        if m < 0:
            if a.coeffs[0] == 0.0:
                raise DivisionByZeroConstantTerm(
                    "negative power of a jet with zero constant term")
            return 1.0 / _int_power(a, -m)
        return _int_power(a, m)
    if not a.coeffs[0] > 0.0:
        raise DomainError(
            f"non-integer power {exponent!r} of non-positive value "
            f"{a.coeffs[0]!r}", value=float(a.coeffs[0]))
    return Jet(_exp(exponent * _log(a.coeffs)))


def _int_power(a, m):
    result = jet_constant(1.0, a.order)
    base = a
    while m:
        if m & 1:
            result = result * base
        m >>= 1
        if m:
            base = base * base
    return result


_ARITH = {
    "add": lambda a, b: a + b,
    "sub": lambda a, b: a - b,
    "mul": lambda a, b: a * b,
    "div": lambda a, b: a / b,
}

_ELEMENTARY = {"sin": sin, "cos": cos, "exp": exp, "log": log, "sqrt": sqrt}


def jet_arith(a, b, op):
    """Apply a binary operation (``add``, ``sub``, ``mul`` or ``div``)."""
    try:
        fn = _ARITH[op]
    except KeyError:
        raise ValueError(f"unknown jet operation {op!r}") from None
    if a.order != b.order:
        raise ValueError(f"jet orders differ: {a.order} vs {b.order}")
    return fn(a, b)


def jet_elementary(a, fn, exponent=None):
    """Compose a jet with ``sin``, ``cos``, ``exp``, ``log``, ``sqrt`` or ``pow``."""
    if fn == "pow":
        if exponent is None:
            raise ValueError("pow needs an exponent")
        return power(a, exponent)
    try:
        return _ELEMENTARY[fn](a)
    except KeyError:
        raise ValueError(f"unknown elementary function {fn!r}") from None


def extract_derivatives(j, upto):
    """Return ``[f'(t0), ..., f^(upto)(t0)]`` from a jet."""
    if upto > j.order:
        raise OrderTooLow(
            f"jet of order {j.order} cannot supply {upto} derivatives")
    c = j.coeffs
    return [math.factorial(k) * float(c[k]) for k in range(1, upto + 1)]
