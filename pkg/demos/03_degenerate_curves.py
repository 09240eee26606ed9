"""
Curves that do not span the whole space
=======================================

When the derivatives stop being independent the order of the curve drops
and only the leading curvatures exist. The engine detects the order at each
sample and can split a grid into runs of constant order.
"""

import numpy as np

from frenet_kit import curvatures, engine, parse_curve, segment_by_order
from frenet_kit.errors import OrderDeficient

# a unit circle sitting inside R^4
circle = parse_curve("[cos(t), sin(t), 0, 0]")
try:
    curvatures(circle, 0.2)
except OrderDeficient as exc:
    print("strict mode:", exc)

cm = engine.canonical_matrix(circle, 0.2)
gd = engine.gram_data(cm)
order = engine.detect_order(gd)
print("order", order, "->", engine.curvatures_degenerate(cm, gd, order).kappas)

# a plane curve in R^3: order n-1, so the last curvature is exactly zero
prof = curvatures(parse_curve("[t, t^2, 0]"), 0.5)
print(prof.kappas, "last_zero =", prof.last_zero)

# an inflection at t = 0 is a single sample of order 1
seg = segment_by_order(parse_curve("[sin(t), sin(2*t), 0]"), np.linspace(-1, 1, 21))
for s in seg.segments:
    print(f"order {s.order} on [{s.t_start:+.2f}, {s.t_end:+.2f}]")
