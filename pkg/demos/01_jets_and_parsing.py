"""
Jets and curve text
===================

A curve is written as a bracketed list of expressions in ``t``. Each
component is evaluated on a truncated Taylor series (a jet), so the
derivatives come out exactly, without finite differences.
"""

import math

from frenet_kit import dsl, jets
from frenet_kit.jets import extract_derivatives, jet_variable

# the jet of t at t0 = 0.5, carried to order 4
x = jet_variable(0.5, 4)
print("t      ->", x.coeffs)

# arithmetic and elementary functions act on whole jets
y = jets.sin(x) * jets.exp(-x * x)
print("sin(t)*exp(-t^2) derivatives at 0.5:", extract_derivatives(y, 4))

# the same number by hand, first derivative only
d1 = math.cos(0.5) * math.exp(-0.25) - 2 * 0.5 * math.sin(0.5) * math.exp(-0.25)
print("by hand:", d1)

# parsing a curve and printing it back in canonical form
spec = dsl.parse_curve("[ (t) , t^2 - (1 - t), sin(2*t) ]")
print(dsl.pretty(spec))

# every component as a jet at t = 1
for j in dsl.eval_components(spec, 1.0, 3):
    print(j.coeffs)

# malformed input points at the offending character
try:
    dsl.parse_curve("[t, sin t]")
except dsl.ParseError as exc:
    print(exc.diagnostic())
