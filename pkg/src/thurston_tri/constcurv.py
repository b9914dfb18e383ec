"""Reference Ceva/Menelaus checks in the plane, on the sphere and in the hyperbolic plane.

All three models share a projective representation: points are 3-vectors
(``(x, y, 1)`` for the Euclidean plane, unit vectors for the sphere, upper
hyperboloid points ``x^2 + y^2 - z^2 = -1`` for the hyperbolic plane), lines
are cross products of two points and two lines meet in the cross product of
their normals.
"""

from __future__ import annotations

import enum

import numpy as np

from .core import (
    DegenerateConfiguration,
    Geometry,
    GeometryError,
    SignedRatio,
    TheoremReport,
    ZeroDenominator,
    make_report,
    make_rng,
)


class CCKind(str, enum.Enum):
    EUCLIDEAN = "Euclidean"
    SPHERICAL = "Spherical"
    HYPERBOLIC = "Hyperbolic"

    @property
    def geometry(self) -> Geometry:
        return {"Euclidean": Geometry.E3, "Spherical": Geometry.S3, "Hyperbolic": Geometry.H3}[self.value]

    def weight(self, d):
        if self is CCKind.EUCLIDEAN:
            return d
        if self is CCKind.SPHERICAL:
            return np.sin(d)
        return np.sinh(d)

    @classmethod
    def parse(cls, name) -> CCKind:
        if isinstance(name, CCKind):
            return name
        key = str(name).strip().lower()
        aliases = {"euclidean": cls.EUCLIDEAN, "e3": cls.EUCLIDEAN, "e2": cls.EUCLIDEAN,
                   "spherical": cls.SPHERICAL, "s3": cls.SPHERICAL, "s2": cls.SPHERICAL,
                   "hyperbolic": cls.HYPERBOLIC, "h3": cls.HYPERBOLIC, "h2": cls.HYPERBOLIC}
        if key not in aliases:
            raise GeometryError(f"unknown constant-curvature kind {name!r}")
        return aliases[key]


def cc_simple_ratio(kind, dAP: float, dPB: float, between: bool) -> SignedRatio:
    kind = CCKind.parse(kind)
    if dAP < 0 or dPB < 0:
        raise GeometryError("distances must be non-negative")
    if kind is CCKind.SPHERICAL and (dAP > np.pi or dPB > np.pi):
        raise GeometryError("spherical arcs are limited to a semicircle")
    den = float(kind.weight(dPB))
    if den == 0.0:
        raise ZeroDenominator("w(d(P,B)) vanishes")
    mag = float(kind.weight(dAP)) / den
    return SignedRatio(mag if between else -mag, bool(between), kind.geometry)


# ---------------------------------------------------------------------------
# model helpers
# ---------------------------------------------------------------------------

_MINK = np.array([1.0, 1.0, -1.0])


def _mdot(a, b):
    return float(np.sum(_MINK * a * b))


def _normalize_point(kind: CCKind, X):
    X = np.asarray(X, dtype=float)
    if kind is CCKind.EUCLIDEAN:
        if abs(X[2]) < 1e-12 * np.linalg.norm(X):
            raise DegenerateConfiguration("lines are parallel")
        return X / X[2]
    if kind is CCKind.SPHERICAL:
        return X / np.linalg.norm(X)
    q = _mdot(X, X)
    if not q < 0:
        raise DegenerateConfiguration("lines do not meet in the hyperbolic plane")
    X = X / np.sqrt(-q)
    return X if X[2] > 0 else -X


def distance(kind: CCKind, a, b) -> float:
    if kind is CCKind.EUCLIDEAN:
        return float(np.linalg.norm((a - b)[:2]))
    if kind is CCKind.SPHERICAL:
        return float(np.arctan2(np.linalg.norm(np.cross(a, b)), np.dot(a, b)))
    d = a - b
    return float(2.0 * np.arcsinh(0.5 * np.sqrt(max(_mdot(d, d), 0.0))))


def span_coeffs(a, b, p):
    """Coefficients (alpha, beta) with p = alpha a + beta b (least squares)."""
    M = np.stack([a, b], axis=1)
    coef, *_ = np.linalg.lstsq(M, p, rcond=None)
    return float(coef[0]), float(coef[1])


def _ratio(kind: CCKind, a, p, b) -> SignedRatio:
    al, be = span_coeffs(a, b, p)
    between = al > 0 and be > 0
    return cc_simple_ratio(kind, distance(kind, a, p), distance(kind, p, b), between)


def _meet(kind: CCKind, line1, a, b):
    """Intersection of ``line1`` with the line through a and b, as a model point."""
    X = np.cross(line1, np.cross(a, b))
    X = _normalize_point(kind, X)
    if kind is CCKind.SPHERICAL:
        al, be = span_coeffs(a, b, X)
        if al < 0 and be < 0:
            # prefer the antipode that lies on the minor arc
            X = -X
    return X


def _sample_point(kind: CCKind, rng):
    if kind is CCKind.EUCLIDEAN:
        return np.array([*rng.uniform(-1.0, 1.0, 2), 1.0])
    if kind is CCKind.SPHERICAL:
        v = rng.normal(size=3)
        return v / np.linalg.norm(v)
    # Klein-disk point of radius <= 0.9, lifted to the hyperboloid
    r = 0.9 * np.sqrt(rng.uniform())
    t = rng.uniform(-np.pi, np.pi)
    k = np.array([r * np.cos(t), r * np.sin(t), 1.0])
    return _normalize_point(kind, k)


def _combine(kind: CCKind, pts, weights):
    X = sum(w * p for w, p in zip(weights, pts))
    return _normalize_point(kind, X)


def _check_triangle(kind: CCKind, A, B, C, min_area=1e-6):
    vol = abs(float(np.dot(A, np.cross(B, C))))
    if kind is CCKind.EUCLIDEAN:
        vol *= 0.5
    if vol < min_area:
        raise DegenerateConfiguration(f"triangle too thin ({vol:.2e})")
    if kind is CCKind.SPHERICAL:
        for x, y in ((A, B), (B, C), (C, A)):
            if distance(kind, x, y) > np.pi - 1e-3:
                raise DegenerateConfiguration("near-antipodal vertices: arc exceeds a semicircle")


def _check_division(kind, p, a, b, min_frac=1e-3):
    # keep division points away from the vertices so the ratios stay conditioned
    for v in (a, b):
        if distance(kind, p, v) < min_frac * max(distance(kind, a, b), 1e-12):
            raise DegenerateConfiguration("division point too close to a vertex")


def cc_ceva(kind, A, B, C, weights) -> TheoremReport:
    """Cevians through the point with the given positive weights."""
    kind = CCKind.parse(kind)
    A, B, C = (np.asarray(x, dtype=float) for x in (A, B, C))
    T = _combine(kind, (A, B, C), weights)
    Q = _meet(kind, np.cross(A, T), B, C)
    R = _meet(kind, np.cross(B, T), C, A)
    P = _meet(kind, np.cross(C, T), A, B)
    ratios = (_ratio(kind, A, P, B), _ratio(kind, B, Q, C), _ratio(kind, C, R, A))
    trace = {"vertices": [A.tolist(), B.tolist(), C.tolist()], "T": T.tolist(),
             "P": P.tolist(), "Q": Q.tolist(), "R": R.tolist()}
    return make_report(kind.geometry, "ceva", ratios, trace)


def cc_menelaus(kind, A, B, C, line) -> TheoremReport:
    """Transversal given by its normal vector in the projective representation."""
    kind = CCKind.parse(kind)
    A, B, C, line = (np.asarray(x, dtype=float) for x in (A, B, C, line))
    P = _meet(kind, line, A, B)
    Q = _meet(kind, line, B, C)
    R = _meet(kind, line, C, A)
    for X, (u, v) in ((P, (A, B)), (Q, (B, C)), (R, (C, A))):
        _check_division(kind, X, u, v)
    ratios = (_ratio(kind, A, P, B), _ratio(kind, B, Q, C), _ratio(kind, C, R, A))
    trace = {"vertices": [A.tolist(), B.tolist(), C.tolist()], "line": line.tolist(),
             "P": P.tolist(), "Q": Q.tolist(), "R": R.tolist()}
    return make_report(kind.geometry, "menelaus", ratios, trace)


def cc_verify_ceva_menelaus(kind, seed=0, trials: int = 100, stats: dict | None = None,
                            max_resample: int = 100) -> list[TheoremReport]:
    """Random Ceva and Menelaus configurations; two reports per trial.

    If ``stats`` is given, the number of rejected draws is stored under ``"resampled"``.
    """
    kind = CCKind.parse(kind)
    if trials < 1:
        raise GeometryError("trials must be >= 1")
    rng = make_rng(seed)
    reports: list[TheoremReport] = []
    resampled = 0
    for _ in range(trials):
        for attempt in range(max_resample):
            try:
                A, B, C = (_sample_point(kind, rng) for _ in range(3))
                _check_triangle(kind, A, B, C)
                w = rng.uniform(0.05, 1.0, 3)
                ceva = cc_ceva(kind, A, B, C, w / w.sum())
                X, Y = _sample_point(kind, rng), _sample_point(kind, rng)
                if kind is CCKind.SPHERICAL:
                    line = rng.normal(size=3)
                else:
                    line = np.cross(X, Y)
                men = cc_menelaus(kind, A, B, C, line)
                break
            except (DegenerateConfiguration, ZeroDenominator):
                resampled += 1
        else:
            raise DegenerateConfiguration("could not draw a non-degenerate configuration")
        reports.extend([ceva, men])
    if stats is not None:
        stats["resampled"] = resampled
    return reports
