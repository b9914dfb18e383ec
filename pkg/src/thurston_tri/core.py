"""Shared numeric foundation: points, tolerances, ratios, errors, root finding.

Points of every projective model are stored in the affine chart ``x0 = 1`` as
numpy arrays whose last axis has length 3.  Most kernels broadcast over
leading axes so that surface sampling can evaluate thousands of points at once.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np
from scipy.optimize import brentq


# ---------------------------------------------------------------------------
# Errors
# ---------------------------------------------------------------------------


class GeometryError(ValueError):
    """Base class for every error raised by the kernel."""


class NoBracket(GeometryError):
    pass


class DegenerateTarget(GeometryError):
    pass


class DegeneratePair(GeometryError):
    pass


class DegeneratePoint(GeometryError):
    pass


class NotOnCurve(GeometryError):
    pass


class NotOnSurface(GeometryError):
    pass


class NoIntersection(GeometryError):
    pass


class InvalidPoint(GeometryError):
    pass


class ChartOverflow(GeometryError):
    pass


class ZeroDenominator(GeometryError):
    pass


class DegenerateConfiguration(GeometryError):
    pass


class DegenerateTriangle(DegenerateConfiguration):
    pass


class ParallelSide(DegenerateConfiguration):
    pass


class LiftFailure(GeometryError):
    pass


# ---------------------------------------------------------------------------
# Tags and value types
# ---------------------------------------------------------------------------


class Geometry(str, enum.Enum):
    E3 = "E3"
    S3 = "S3"
    H3 = "H3"
    NIL = "Nil"
    SOL = "Sol"
    SLR = "SLR"

    @classmethod
    def parse(cls, name: str | Geometry) -> Geometry:
        if isinstance(name, Geometry):
            return name
        key = str(name).strip().lower()
        for g in cls:
            if g.value.lower() == key or g.name.lower() == key:
                return g
        raise GeometryError(f"unknown geometry {name!r}")


@dataclass(frozen=True)
class Tolerances:
    eps_alg: float = 1e-10
    eps_root: float = 1e-12
    eps_theorem: float = 1e-9

    def __post_init__(self):
        for name in ("eps_alg", "eps_root", "eps_theorem"):
            v = getattr(self, name)
            if not (v > 0 and math.isfinite(v)):
                raise GeometryError(f"{name} must be positive and finite, got {v!r}")


DEFAULT_TOL = Tolerances()


@dataclass(frozen=True)
class SignedRatio:
    """Signed simple ratio ``s(A, P, B)``; positive exactly when P is between A and B."""

    value: float
    between: bool
    geometry: Geometry

    def __post_init__(self):
        if self.between and not self.value > 0:
            raise GeometryError(f"between ratio must be positive, got {self.value}")
        if not self.between and not self.value < 0:
            raise GeometryError(f"exterior ratio must be negative, got {self.value}")

    def to_dict(self) -> dict[str, Any]:
        return {"value": self.value, "between": self.between, "geometry": self.geometry.value}


@dataclass(frozen=True)
class GeographicDirection:
    """Unit tangent at the origin given by geographic angles.

    ``phi`` is the longitude in (-pi, pi], ``theta`` the latitude in
    [-pi/2, pi/2]; the tangent is (cos t cos p, cos t sin p, sin t).
    """

    phi: float
    theta: float

    @property
    def unit(self) -> np.ndarray:
        return geographic_unit(self.phi, self.theta)

    @classmethod
    def from_unit(cls, u) -> GeographicDirection:
        phi, theta = unit_to_geographic(u)
        return cls(float(phi), float(theta))


@dataclass(frozen=True)
class CurveSolution:
    """Solution of the inverse problem: direction and translation arc length."""

    dir: GeographicDirection
    t: float


@dataclass
class TheoremReport:
    """One Ceva or Menelaus configuration with its three ratios and their product.

    ``alt_*`` fields carry a second ratio convention when a geometry has two
    (SLR: pointwise distance ratios next to the Euclidean model ratios).
    """

    geometry: Geometry
    kind: str
    ratios: tuple[SignedRatio, SignedRatio, SignedRatio]
    product: float
    deviation: float
    trace: dict[str, Any] = field(default_factory=dict)
    alt_label: str | None = None
    alt_ratios: tuple[SignedRatio, SignedRatio, SignedRatio] | None = None
    alt_product: float | None = None
    alt_deviation: float | None = None

    @property
    def expected(self) -> float:
        return expected_product(self.kind)

    def to_dict(self) -> dict[str, Any]:
        out = {
            "geometry": self.geometry.value,
            "kind": self.kind,
            "ratios": [r.to_dict() for r in self.ratios],
            "product": self.product,
            "deviation": self.deviation,
            "trace": self.trace,
        }
        if self.alt_ratios is not None:
            out["alt"] = {
                "label": self.alt_label,
                "ratios": [r.to_dict() for r in self.alt_ratios],
                "product": self.alt_product,
                "deviation": self.alt_deviation,
            }
        return out


def expected_product(kind: str) -> float:
    if kind == "ceva":
        return 1.0
    if kind == "menelaus":
        return -1.0
    raise GeometryError(f"unknown configuration kind {kind!r}")


def make_report(geometry, kind, ratios, trace=None, alt_ratios=None, alt_label=None) -> TheoremReport:
    product = float(np.prod([r.value for r in ratios]))
    dev = abs(product - expected_product(kind))
    rep = TheoremReport(Geometry.parse(geometry), kind, tuple(ratios), product, dev, trace or {})
    if alt_ratios is not None:
        alt_product = float(np.prod([r.value for r in alt_ratios]))
        rep.alt_label = alt_label
        rep.alt_ratios = tuple(alt_ratios)
        rep.alt_product = alt_product
        rep.alt_deviation = abs(alt_product - expected_product(kind))
    return rep


# ---------------------------------------------------------------------------
# Points and small linear algebra
# ---------------------------------------------------------------------------


def as_point(p, name: str = "point") -> np.ndarray:
    """Coerce to a float array with trailing axis 3 and finite entries."""
    a = np.asarray(p, dtype=float)
    if a.shape[-1:] != (3,):
        raise GeometryError(f"{name} must have 3 coordinates, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise GeometryError(f"{name} has non-finite coordinates: {a}")
    return a


def point_tuple(p) -> tuple[float, float, float]:
    a = np.asarray(p, dtype=float)
    return (float(a[0]), float(a[1]), float(a[2]))


def geographic_unit(phi, theta) -> np.ndarray:
    phi = np.asarray(phi, dtype=float)
    theta = np.asarray(theta, dtype=float)
    c = np.cos(theta)
    return np.stack([c * np.cos(phi), c * np.sin(phi), np.sin(theta)], axis=-1)


def unit_to_geographic(u):
    u = np.asarray(u, dtype=float)
    horiz = np.hypot(u[..., 0], u[..., 1])
    theta = np.arctan2(u[..., 2], horiz)
    # phi is immaterial on the poles; pin it to 0 for a single-valued inverse
    phi = np.where(horiz > 0, np.arctan2(u[..., 1], u[..., 0]), 0.0)
    return phi, theta


def det3(a, b, c):
    """Determinant of the 3x3 matrix with rows a, b, c (broadcasts)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    c = np.asarray(c, dtype=float)
    return np.sum(a * np.cross(b, c), axis=-1)


def normalize(v, axis=-1):
    v = np.asarray(v, dtype=float)
    n = np.linalg.norm(v, axis=axis, keepdims=True)
    return v / n


def euclid_line_param(a, p, b):
    """Parameter lam with p ~ a + lam (b - a), plus the orthogonal residual."""
    a, p, b = (np.asarray(x, dtype=float) for x in (a, p, b))
    d = b - a
    dd = float(np.dot(d, d))
    if dd == 0.0:
        raise DegeneratePair("segment endpoints coincide")
    lam = float(np.dot(p - a, d) / dd)
    resid = float(np.linalg.norm(p - (a + lam * d)))
    return lam, resid


def ratio_from_param(lam: float) -> float:
    """Signed Euclidean simple ratio AP/PB for P = A + lam (B - A)."""
    if lam == 1.0:
        raise ZeroDenominator("division point coincides with the second endpoint")
    return lam / (1.0 - lam)


def euclid_signed_ratio(a, p, b, geometry=Geometry.E3, tol: float = 1e-9) -> SignedRatio:
    """Euclidean signed simple ratio of three collinear points (any dimension)."""
    lam, resid = euclid_line_param(a, p, b)
    scale = max(1.0, float(np.linalg.norm(np.asarray(b, float) - np.asarray(a, float))))
    if resid > tol * scale:
        raise NotOnCurve(f"point is {resid:.3e} away from the line")
    return SignedRatio(ratio_from_param(lam), 0.0 < lam < 1.0, Geometry.parse(geometry))


# ---------------------------------------------------------------------------
# Root finding
# ---------------------------------------------------------------------------


def solve_bracketed_root(f: Callable[[float], float], lo: float, hi: float, tol: float = 1e-12) -> float:
    """Root of ``f`` in ``[lo, hi]`` given a sign change at the ends."""
    if not lo < hi:
        raise GeometryError(f"need lo < hi, got [{lo}, {hi}]")
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return float(lo)
    if fhi == 0.0:
        return float(hi)
    if flo * fhi > 0:
        raise NoBracket(f"f({lo})={flo:.3e} and f({hi})={fhi:.3e} have the same sign")
    return float(brentq(f, lo, hi, xtol=tol, rtol=4 * np.finfo(float).eps, maxiter=500))


def bisect_many(f, lo, hi, tol: float = 1e-12, max_iter: int = 200):
    """Vectorised bisection: ``f`` maps an array of abscissae to values.

    ``lo``/``hi`` are arrays of brackets with ``f(lo) * f(hi) <= 0``.  Returns
    the midpoints once every bracket is narrower than ``tol``.
    """
    lo = np.array(lo, dtype=float)
    hi = np.array(hi, dtype=float)
    flo = f(lo)
    for _ in range(max_iter):
        if np.all(hi - lo < tol):
            break
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        left = np.sign(fm) == np.sign(flo)
        lo = np.where(left, mid, lo)
        flo = np.where(left, fm, flo)
        hi = np.where(left, hi, mid)
    return 0.5 * (lo + hi)


def make_rng(seed) -> np.random.Generator:
    """Explicit generator; no module-level random state anywhere."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)
