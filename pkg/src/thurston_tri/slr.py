"""SL2R~ geometry in the hyperboloid-solid chart.

Translation curves from the origin are Euclidean rays ``f(s) * e`` with
``e = (sin a, cos a cos l, cos a sin l)``; the radial profile ``f`` depends on
the sign of ``cos 2a`` (H2-like, light-like, fibre-like).  Translations are the
4x4 matrices ``T(X)`` acting on row vectors of homogeneous coordinates.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .core import (
    DEFAULT_TOL,
    ChartOverflow,
    DegeneratePair,
    DegenerateTarget,
    Geometry,
    InvalidPoint,
    NotOnCurve,
    SignedRatio,
    Tolerances,
    as_point,
    euclid_line_param,
    ratio_from_param,
)

#: |cos 2 alpha| at or below this counts as light-like
LIGHTLIKE_EPS = 1e-12


class Regime(str, enum.Enum):
    H2LIKE = "H2like"
    LIGHTLIKE = "LightLike"
    FIBRELIKE = "FibreLike"


def regime_of(k: float) -> Regime:
    """Regime from the squared length ``k = cos 2 alpha`` of the unit tangent."""
    if abs(k) <= LIGHTLIKE_EPS:
        return Regime.LIGHTLIKE
    return Regime.H2LIKE if k > 0 else Regime.FIBRELIKE


@dataclass(frozen=True)
class SlrDirection:
    lam: float
    alpha: float

    @property
    def unit(self) -> np.ndarray:
        a, l = self.alpha, self.lam
        return np.array([np.sin(a), np.cos(a) * np.cos(l), np.cos(a) * np.sin(l)])

    @property
    def k(self) -> float:
        return float(np.cos(2 * self.alpha))

    @property
    def regime(self) -> Regime:
        return regime_of(self.k)


@dataclass(frozen=True)
class SlrCurveSolution:
    dir: SlrDirection
    s: float


def slr_valid(p) -> bool:
    x, y, z = as_point(p)
    return bool(y * y + z * z < 1.0 + x * x)


def _require_valid(p, name="point"):
    p = as_point(p, name)
    if not slr_valid(p):
        raise InvalidPoint(f"{name} {p} is outside the hyperboloid solid")
    return p


def homogeneous(p) -> np.ndarray:
    """Homogeneous coordinates scaled so that -x0^2 - x1^2 + x2^2 + x3^2 = -1."""
    x, y, z = _require_valid(p)
    x0 = 1.0 / np.sqrt(1.0 + x * x - y * y - z * z)
    return np.array([x0, x * x0, y * x0, z * x0])


def translation_matrix(X) -> np.ndarray:
    x0, x1, x2, x3 = X
    return np.array(
        [
            [x0, x1, x2, x3],
            [-x1, x0, x3, -x2],
            [x2, x3, x0, x1],
            [x3, -x2, -x1, x0],
        ]
    )


def slr_translation_to(x) -> np.ndarray:
    """Matrix of the translation carrying the origin E0 to ``x`` (right action)."""
    return translation_matrix(homogeneous(x))


def slr_translation_from(x) -> np.ndarray:
    """Inverse of :func:`slr_translation_to`: carries ``x`` back to E0."""
    X = homogeneous(x)
    return translation_matrix(np.array([X[0], -X[1], -X[2], -X[3]]))


def dehomogenize(Y) -> np.ndarray:
    if not Y[0] > 0:
        raise ChartOverflow("image left the x0 > 0 chart")
    return Y[1:] / Y[0]


def slr_relative(a, b) -> np.ndarray:
    """``b`` carried by the translation that takes ``a`` to the origin."""
    Y = homogeneous(b) @ slr_translation_from(a)
    return dehomogenize(Y)


def slr_translate(p, by) -> np.ndarray:
    """Image of ``p`` under the translation taking the origin to ``by``."""
    Y = homogeneous(p) @ slr_translation_to(by)
    return dehomogenize(Y)


def radial_profile(k: float, s):
    """Euclidean distance from the origin after translation arc length ``s``."""
    s = np.asarray(s, dtype=float)
    reg = regime_of(k)
    if reg is Regime.LIGHTLIKE:
        return s
    if reg is Regime.H2LIKE:
        r = np.sqrt(k)
        return np.tanh(s * r) / r
    r = np.sqrt(-k)
    if np.any(np.abs(s) * r >= np.pi / 2):
        raise ChartOverflow(f"fibre-like curve leaves the chart at s*sqrt(-cos 2a) = {np.max(np.abs(s)) * r}")
    return np.tan(s * r) / r


def slr_curve(dir: SlrDirection, s):
    f = radial_profile(dir.k, s)
    return np.asarray(f)[..., None] * dir.unit


def slr_solve(target) -> SlrCurveSolution:
    q = _require_valid(target, "target")
    a, b, c = q
    R = float(np.linalg.norm(q))
    if R == 0.0:
        raise DegenerateTarget("the origin has no connecting translation curve")
    rho = float(np.hypot(b, c))
    alpha = float(np.arctan2(a, rho))
    lam = float(np.arctan2(c, b)) if rho > 0 else 0.0
    # cos 2 alpha straight from the coordinates: better conditioned near pi/4
    k = (rho - abs(a)) * (rho + abs(a)) / (R * R)
    reg = regime_of(k)
    if reg is Regime.LIGHTLIKE:
        s = R
    elif reg is Regime.H2LIKE:
        r = np.sqrt(k)
        s = float(np.arctanh(R * r) / r)
    else:
        r = np.sqrt(-k)
        s = float(np.arctan(R * r) / r)
    return SlrCurveSolution(SlrDirection(lam, alpha), float(s))


def slr_distance(a, b) -> float:
    a = _require_valid(a, "a")
    b = _require_valid(b, "b")
    if np.array_equal(a, b):
        return 0.0
    q = slr_relative(a, b)
    if not np.any(q):
        return 0.0
    return slr_solve(q).s


def _line_param(a, p, b, tol: Tolerances):
    lam, resid = euclid_line_param(a, p, b)
    scale = max(1.0, float(np.linalg.norm(b - a)), abs(lam))
    if resid > tol.eps_alg * scale:
        raise NotOnCurve(f"point is {resid:.3e} off the line through the endpoints")
    if lam == 0.0 or lam == 1.0:
        raise DegeneratePair("division point coincides with an endpoint")
    return lam


def slr_simple_ratio(a, p, b, tol: Tolerances = DEFAULT_TOL) -> SignedRatio:
    """Ratio from pointwise translation distances, weighted by the curve regime."""
    a, p, b = (_require_valid(x) for x in (a, p, b))
    lam = _line_param(a, p, b, tol)
    between = 0.0 < lam < 1.0
    k = slr_solve(slr_relative(a, b)).dir.k
    d_ap = slr_distance(a, p)
    d_pb = slr_distance(p, b)
    reg = regime_of(k)
    if reg is Regime.LIGHTLIKE:
        mag = d_ap / d_pb
    elif reg is Regime.H2LIKE:
        r = np.sqrt(k)
        mag = np.tanh(d_ap * r) / np.tanh(d_pb * r)
    else:
        r = np.sqrt(-k)
        mag = np.tan(d_ap * r) / np.tan(d_pb * r)
    mag = float(mag)
    return SignedRatio(mag if between else -mag, between, Geometry.SLR)


def slr_euclid_ratio(a, p, b, tol: Tolerances = DEFAULT_TOL) -> SignedRatio:
    """Euclidean signed ratio of the model points along their common line."""
    a, p, b = (as_point(x) for x in (a, p, b))
    lam = _line_param(a, p, b, tol)
    return SignedRatio(ratio_from_param(lam), 0.0 < lam < 1.0, Geometry.SLR)
