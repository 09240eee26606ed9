"""Frenet frames and generalized curvatures of curves in R^n.

Curves are written in a small expression language, differentiated exactly
with truncated Taylor jets, and reduced to curvatures through the leading
principal minors of the Gram matrix of their derivatives.

>>> import frenet_kit as fk
>>> spec = fk.parse_curve("[t, t^2, t^3, t^4]")
>>> fk.curvatures(spec, 0.0).kappas
(2.0, 3.0, 4.0)
"""

from . import dsl, engine, errors, jets, linalg, oracles, report
from .dsl import CurveSpec, parse_curve, pretty
from .engine import (
    CanonicalMatrix,
    CurvatureProfile,
    FrenetFrame,
    canonical_matrix,
    curvatures,
    frenet_frame,
    segment_by_order,
)
from .errors import FrenetError
from .jets import Jet

__version__ = "0.1.0"

__all__ = [
    "dsl", "engine", "errors", "jets", "linalg", "oracles", "report",
    "CurveSpec", "parse_curve", "pretty",
    "CanonicalMatrix", "CurvatureProfile", "FrenetFrame",
    "canonical_matrix", "curvatures", "frenet_frame", "segment_by_order",
    "FrenetError", "Jet",
]
