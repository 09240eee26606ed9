"""
Generalized curvatures of (t, t^2, t^3, t^4)
============================================

The canonical matrix holds the first four derivatives as columns. The
leading principal minors of its Gram matrix give every curvature, and a QR
factorization of the same matrix gives them a second way.
"""

import numpy as np

from frenet_kit import canonical_matrix, curvatures, frenet_frame, parse_curve
from frenet_kit import engine

spec = parse_curve("[t, t^2, t^3, t^4]")

cm = canonical_matrix(spec, 0.0)
print("A(0) =")
print(cm.a)

gd = engine.gram_data(cm)
print("minors:", gd.minors, " det A:", gd.det_a)

# minor formulas and the QR path agree
print("minor:", curvatures(spec, 0.0).kappas)
print("qr:   ", curvatures(spec, 0.0, method="qr").kappas)

# the frame is orthonormal and positively oriented
f = frenet_frame(cm).matrix
print("F^T F = I:", np.allclose(f.T @ f, np.eye(4)), " det F:", np.linalg.det(f))

# curvatures along the curve; the last one keeps the sign of det A = 288
for t in np.linspace(-1, 1, 5):
    print(f"t={t:+.2f}", np.round(curvatures(spec, t).kappas, 6))

# in R^3 the minor formulas reduce to curvature and torsion
helix = parse_curve("[cos(t), sin(t), t]")
print("helix:", curvatures(helix, 0.3).kappas,
      engine.classical_r3(canonical_matrix(helix, 0.3)))
