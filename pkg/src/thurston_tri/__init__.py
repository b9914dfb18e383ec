"""Translation curves, simple ratios and Ceva/Menelaus checks in Nil, Sol and SL2R~."""

from __future__ import annotations

from .core import (
    DEFAULT_TOL,
    CurveSolution,
    GeographicDirection,
    Geometry,
    GeometryError,
    SignedRatio,
    TheoremReport,
    Tolerances,
)
from .nil import nil_curve, nil_distance, nil_simple_ratio, nil_solve, nil_translate
from .sol import sol_curve, sol_distance, sol_simple_ratio, sol_solve, sol_translate
from .slr import SlrDirection, slr_curve, slr_distance, slr_euclid_ratio, slr_simple_ratio, slr_solve
from .constcurv import CCKind, cc_simple_ratio, cc_verify_ceva_menelaus
from .surface import Mesh, TriangleSpec, surface_mesh, surface_value

__version__ = "0.1.0"
