"""Curve corpus and random-curve builders shared by the test modules."""

import numpy as np

from frenet_kit import dsl, engine

WORKED = "[t, t^2, t^3, t^4]"
HELIX = "[cos(t), sin(t), t]"          # a = b = 1, k = tau = 1/2
CIRCLE2 = "[2*cos(t), 2*sin(t)]"

# Full-order curves (order n - 1 at least) on [-1, 1], grouped by dimension.
CORPUS = {
    2: [
        "[cos(t), sin(t)]",
        CIRCLE2,
        "[t, t^2]",
        "[exp(t), t]",
        "[t, t^3 + t]",
        "[(exp(t) + exp(-t))/2, t]",
    ],
    3: [
        HELIX,
        "[t, t^2, t^3]",
        "[cos(t), sin(2*t), t^2 + 1]",
        "[3*cos(t), 3*sin(t), 4*t]",
        "[exp(t/2), t, t^3/3 - t]",
        "[sqrt(2 + t), t^2, sin(t)]",
    ],
    4: [
        WORKED,
        "[cos(t), sin(t), cos(2*t), sin(2*t)]",
        "[t, exp(t), t^3, sin(t)]",
        "[cos(t), sin(t), t^2, t^3/6 + t]",
    ],
    5: [
        "[t, t^2, t^3, t^4, t^5]",
        "[cos(t), sin(t), cos(2*t), sin(2*t), t]",
        "[t, exp(t/2), t^3, sin(t), t^4/4]",
    ],
    6: [
        "[t, t^2, t^3, t^4, t^5, t^6]",
        "[cos(t), sin(t), cos(2*t), sin(2*t), cos(3*t), sin(3*t)]",
    ],
}


def corpus_specs():
    for n, texts in CORPUS.items():
        for text in texts:
            yield n, dsl.parse_curve(text)


def grid(lo=-1.0, hi=1.0, m=11):
    return np.linspace(lo, hi, m)


def _num(x):
    return f"({float(x)!r})"


def random_r3_text(rng):
    """Polynomial + trig space curve, retried until it has order 2 on [-1, 1]."""
    while True:
        comps = []
        for _ in range(3):
            a, b, c, d = rng.uniform(-2, 2, 4)
            w = rng.uniform(0.5, 2.5)
            comps.append(f"{_num(a)}*t + {_num(b)}*t^2 + {_num(c)}*t^3"
                         f" + {_num(d)}*sin({_num(w)}*t)")
        text = "[" + ", ".join(comps) + "]"
        spec = dsl.parse_curve(text)
        ok = True
        for t in grid():
            gd = engine.gram_data(engine.canonical_matrix(spec, t))
            if engine.detect_order(gd) < 2 or gd.normalized[1] < 1e-6:
                ok = False
                break
        if ok:
            return text


def random_text(rng, n):
    """Random curve in R^n mixing monomials and trig terms, full order on [-1, 1]."""
    while True:
        comps = []
        for i in range(n):
            a, b = rng.uniform(-1.5, 1.5, 2)
            w = rng.uniform(0.5, 2.0)
            fn = ("sin", "cos")[i % 2]
            comps.append(f"{_num(a)}*t^{i + 1} + {_num(b)}*{fn}({_num(w)}*t)")
        text = "[" + ", ".join(comps) + "]"
        spec = dsl.parse_curve(text)
        ok = True
        for t in grid():
            gd = engine.gram_data(engine.canonical_matrix(spec, t))
            if engine.detect_order(gd) < n or min(gd.normalized) < 1e-8:
                ok = False
                break
        if ok:
            return text


def transformed_text(spec, q, b=None, c=1.0):
    """Text of ``c * Q gamma + b`` built from the printed components."""
    n = spec.n
    b = np.zeros(n) if b is None else b
    parts = [f"({dsl.pretty_expr(e.ast)})" for e in spec.components]
    rows = []
    for i in range(n):
        terms = [f"{_num(c * q[i, j])}*{parts[j]}" for j in range(n)]
        rows.append(" + ".join(terms) + f" + {_num(b[i])}")
    return "[" + ", ".join(rows) + "]"


def random_rotation(rng, n, det=1.0):
    q, r = np.linalg.qr(rng.normal(size=(n, n)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) * det < 0:
        q[:, 0] = -q[:, 0]
    return q


def reparametrized(spec, phi_text):
    """``gamma o phi`` for ``phi`` given as an expression in ``t``."""
    phi = dsl.parse_expr(phi_text)
    return dsl.CurveSpec(
        tuple(dsl.CurveExpr(dsl.substitute(e.ast, phi)) for e in spec.components))


def rel_err(a, b):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return np.abs(a - b) / np.maximum(np.abs(b), np.finfo(float).tiny)
