"""Ceva and Menelaus configurations built through a planar Euclidean picture.

Each geometry has a reduction that sends the three sides of a translation
triangle to Euclidean segments:

* Nil: projection along the fibres to [x,y] (in-plane coordinates for
  triangles lying in a plane x = c or y = c);
* Sol: translate A0 to the origin, project to [x,z] and apply
  ``m(x, z) = (x, e^{-z})``; triangles in the [y,z] plane are first swapped
  into [x,z] by the stabiliser generator ``x <-> y, z -> -z`` and triangles in
  the [x,y] plane are used as they are;
* SL2R~: the Euclidean plane of the vertices.

Cevian and transversal intersections are computed in the picture and lifted
back onto the side curves; the geometry's own ratios are then multiplied.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from . import nil, slr, sol
from .constcurv import CCKind, cc_verify_ceva_menelaus
from .core import (
    DEFAULT_TOL,
    DegenerateConfiguration,
    DegenerateTriangle,
    Geometry,
    GeometryError,
    LiftFailure,
    NotOnCurve,
    ParallelSide,
    Tolerances,
    make_report,
    ratio_from_param,
    TheoremReport,
)
from .surface import TriangleSpec, triangle_plane_kind

SIDES = ((0, 1), (1, 2), (2, 0))


# ---------------------------------------------------------------------------
# reductions
# ---------------------------------------------------------------------------


class Reduction:
    """Planar picture of a triangle plus the lift of picture points onto its sides."""

    def __init__(self, tri: TriangleSpec, min_shape: float = 1e-12):
        self.tri = tri
        self.geometry = tri.geometry
        A = tri.vertices
        if self.geometry is Geometry.NIL:
            kind = triangle_plane_kind(tri)
            self.kind = {"xz": "nil-plane-xz", "yz": "nil-plane-yz"}.get(kind, "nil-fibre")
            self.work = A.copy()
        elif self.geometry is Geometry.SOL:
            kind = triangle_plane_kind(tri)
            B = sol.sol_relative(A[0], A)
            B[0] = 0.0
            if kind == "yz":
                B = sol.sol_stabilizer(2, B)
                self.kind = "sol-m-swapped"
            elif kind == "xy":
                self.kind = "sol-plane-xy"
            else:
                self.kind = "sol-m"
            self.work = B
        else:
            self.kind = "slr-plane"
            self.work = A.copy()
            e1 = A[1] - A[0]
            e1 = e1 / np.linalg.norm(e1)
            e2 = A[2] - A[0] - np.dot(A[2] - A[0], e1) * e1
            n2 = np.linalg.norm(e2)
            if n2 < 1e-14:
                raise DegenerateTriangle("SLR vertices are collinear")
            self.basis = np.stack([e1, e2 / n2])
        self.reduced = np.array([self.reduce_work(p) for p in self.work])
        self._check_shape(min_shape)

    def _check_shape(self, min_shape):
        V = self.reduced
        d1, d2 = V[1] - V[0], V[2] - V[0]
        area2 = abs(d1[0] * d2[1] - d1[1] * d2[0])
        scale = max(float(np.sum((V[i] - V[j]) ** 2)) for i, j in SIDES)
        if scale == 0.0 or area2 / scale < min_shape:
            raise DegenerateTriangle(f"reduced triangle is degenerate (shape {area2 / max(scale, 1e-300):.2e})")

    def reduce_work(self, q) -> np.ndarray:
        q = np.asarray(q, dtype=float)
        k = self.kind
        if k == "nil-fibre" or k == "sol-plane-xy":
            return q[:2].copy()
        if k == "nil-plane-xz":
            return q[[0, 2]].copy()
        if k == "nil-plane-yz":
            return q[[1, 2]].copy()
        if k in ("sol-m", "sol-m-swapped"):
            return sol.sol_map_m(sol.sol_project_xz(q))
        return self.basis @ (q - self.work[0])

    def to_model(self, q) -> np.ndarray:
        if self.geometry is Geometry.SOL:
            if self.kind == "sol-m-swapped":
                q = sol.sol_stabilizer(2, q)
            return sol.sol_translate(q, self.tri.vertices[0])
        return np.asarray(q, dtype=float)

    def lift(self, i: int, j: int, lam: float):
        """Point of side i->j whose picture is ``V_i + lam (V_j - V_i)``.

        Returns ``(model point, curve parameter, picture residual)``.
        """
        a, b = self.work[i], self.work[j]
        k = self.kind
        if k == "nil-fibre":
            unit, t_b = nil.solve_unit(nil.nil_relative(a, b))
            t = lam * float(t_b)
            q = nil.nil_translate(nil.curve_from_unit(unit, t), a)
        elif k in ("sol-m", "sol-m-swapped"):
            unit, t_b = sol.solve_unit(sol.sol_relative(a, b))
            w = float(unit[2])
            if abs(w) <= sol.PLANE_EPS:
                t = lam * float(t_b)
            else:
                arg = lam * np.expm1(-w * float(t_b))
                if not arg > -1.0:
                    raise LiftFailure(f"picture point maps to tau = {1 + arg:.3e} <= 0")
                t = float(-np.log1p(arg) / w)
            q = sol.sol_translate(sol.curve_from_unit(unit, t), a)
        else:
            # the sides are Euclidean segments in the model
            q = a + lam * (b - a)
            t = lam
        target = self.reduced[i] + lam * (self.reduced[j] - self.reduced[i])
        resid = float(np.linalg.norm(self.reduce_work(q) - target))
        p = self.to_model(q)
        if self.geometry is Geometry.SLR and not slr.slr_valid(p):
            raise LiftFailure("division point lies outside the SLR model")
        return p, t, resid


def side_membership_residual(geometry: Geometry, a, p, b) -> float:
    """Distance of ``p`` from the forward evaluation of the a->b side curve at its parameter."""
    if geometry is Geometry.NIL:
        unit, _ = nil.solve_unit(nil.nil_relative(a, b))
        r = nil._reduced(nil.nil_relative(a, p))
        t = float(np.dot(r, unit))
        return float(np.linalg.norm(nil.nil_translate(nil.curve_from_unit(unit, t), a) - p))
    if geometry is Geometry.SOL:
        t_p, _, unit = sol.locate_on_curve(a, p, b, Tolerances(eps_alg=1e300))
        return float(np.linalg.norm(sol.sol_translate(sol.curve_from_unit(unit, t_p), a) - p))
    d = b - a
    lam = float(np.dot(p - a, d) / np.dot(d, d))
    return float(np.linalg.norm(a + lam * d - p))


def _hit(x, d, a, b):
    """Parameter lam of the intersection of line x + mu d with the line a + lam (b - a)."""
    e = b - a
    M = np.array([[e[0], -d[0]], [e[1], -d[1]]])
    det = float(np.linalg.det(M))
    if abs(det) <= 1e-12 * np.linalg.norm(e) * np.linalg.norm(d):
        raise ParallelSide("line is parallel to a side of the reduced triangle")
    lam, _ = np.linalg.solve(M, x - a)
    return float(lam)


def _as_triangle(geometry, triangle) -> TriangleSpec:
    if isinstance(triangle, TriangleSpec):
        return triangle
    return TriangleSpec(geometry, triangle)


# ---------------------------------------------------------------------------
# configurations
# ---------------------------------------------------------------------------


@dataclass
class CevaConfig:
    triangle: TriangleSpec
    reduction: Reduction
    weights: np.ndarray
    points: np.ndarray  # P on A0A1, Q on A1A2, R on A2A0
    params: np.ndarray  # picture parameters lam of the three division points
    curve_params: np.ndarray
    trace: dict[str, Any] = field(default_factory=dict)
    kind: str = "ceva"

    @property
    def geometry(self) -> Geometry:
        return self.triangle.geometry


@dataclass
class MenelausConfig:
    triangle: TriangleSpec
    reduction: Reduction
    transversal: tuple[np.ndarray, np.ndarray]  # point and direction in the picture
    points: np.ndarray
    params: np.ndarray
    curve_params: np.ndarray
    trace: dict[str, Any] = field(default_factory=dict)
    kind: str = "menelaus"

    @property
    def geometry(self) -> Geometry:
        return self.triangle.geometry


def _lift_all(red: Reduction, lams, tol: Tolerances):
    pts, ts, resid, member = [], [], [], []
    A = red.tri.vertices
    for (i, j), lam in zip(SIDES, lams):
        p, t, r = red.lift(i, j, lam)
        m = side_membership_residual(red.geometry, A[i], p, A[j])
        scale = max(1.0, float(np.linalg.norm(p)))
        if r > tol.eps_alg * scale or m > tol.eps_alg * scale:
            raise LiftFailure(f"lift residual {max(r, m):.3e} exceeds {tol.eps_alg:g}")
        pts.append(p)
        ts.append(t)
        resid.append(r)
        member.append(m)
    return np.array(pts), np.array(ts), resid, member


def _base_trace(red: Reduction, lams, pts, ts, resid, member):
    return {
        "reduction": red.kind,
        "reduced_vertices": red.reduced.tolist(),
        "picture_params": [float(x) for x in lams],
        "curve_params": [float(x) for x in ts],
        "division_points": pts.tolist(),
        "lift_residuals": [float(x) for x in resid],
        "membership_residuals": [float(x) for x in member],
    }


def build_ceva(geometry, triangle, weights=None, seed=None, tol: Tolerances = DEFAULT_TOL,
               min_shape: float = 1e-12) -> CevaConfig:
    """Cevians through the point with barycentric ``weights`` in the reduced picture.

    Without ``weights`` a random interior point is drawn from ``seed``.
    """
    tri = _as_triangle(geometry, triangle)
    red = Reduction(tri, min_shape)
    if weights is None:
        rng = np.random.default_rng(seed)
        weights = rng.uniform(0.05, 1.0, 3)
    w = np.asarray(weights, dtype=float)
    if w.shape != (3,) or not np.all(w > 0):
        raise GeometryError("barycentric weights must be three positive numbers")
    w = w / w.sum()
    V = red.reduced
    T = w @ V
    lams = []
    for (i, j), k in zip(SIDES, (2, 0, 1)):
        lams.append(_hit(V[k], T - V[k], V[i], V[j]))
    if not all(0.0 < lam < 1.0 for lam in lams):
        raise DegenerateConfiguration("cevian foot outside its side")
    pts, ts, resid, member = _lift_all(red, lams, tol)
    trace = _base_trace(red, lams, pts, ts, resid, member)
    trace["weights"] = w.tolist()
    trace["reduced_T"] = T.tolist()
    return CevaConfig(tri, red, w, pts, np.array(lams), ts, trace)


def build_menelaus(geometry, triangle, transversal=None, seed=None, tol: Tolerances = DEFAULT_TOL,
                   min_shape: float = 1e-12, min_gap: float = 1e-9, max_param: float = np.inf) -> MenelausConfig:
    """Transversal through two points of the reduced picture.

    ``transversal`` is a pair of picture points; without it a random line
    through the triangle's bounding box is drawn from ``seed``.
    """
    tri = _as_triangle(geometry, triangle)
    red = Reduction(tri, min_shape)
    V = red.reduced
    if transversal is None:
        rng = np.random.default_rng(seed)
        lo, hi = V.min(axis=0), V.max(axis=0)
        pad = 0.25 * (hi - lo)
        X, Y = rng.uniform(lo - pad, hi + pad, (2, 2))
    else:
        X, Y = (np.asarray(p, dtype=float).reshape(2) for p in transversal)
    d = Y - X
    if not np.linalg.norm(d) > 0:
        raise GeometryError("transversal needs two distinct points")
    lams = [_hit(X, d, V[i], V[j]) for i, j in SIDES]
    for lam in lams:
        if min(abs(lam), abs(lam - 1.0)) < min_gap:
            raise DegenerateConfiguration("transversal passes through a vertex")
        if abs(lam) > max_param:
            raise DegenerateConfiguration("transversal meets a side line too far out")
    exterior = sum(not 0.0 < lam < 1.0 for lam in lams)
    if exterior not in (1, 3):
        raise DegenerateConfiguration(f"{exterior} exterior division points violates Menelaus parity")
    pts, ts, resid, member = _lift_all(red, lams, tol)
    trace = _base_trace(red, lams, pts, ts, resid, member)
    trace["transversal"] = [X.tolist(), Y.tolist()]
    return MenelausConfig(tri, red, (X, d), pts, np.array(lams), ts, trace)


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------


def _geometry_ratio(geometry: Geometry, a, p, b, tol: Tolerances):
    if geometry is Geometry.NIL:
        return nil.nil_simple_ratio(a, p, b, tol)
    if geometry is Geometry.SOL:
        return sol.sol_simple_ratio(a, p, b, tol)
    return slr.slr_euclid_ratio(a, p, b, tol)


def verify(config, tol: Tolerances = DEFAULT_TOL) -> TheoremReport:
    A = config.triangle.vertices
    g = config.geometry
    triples = [(A[i], config.points[n], A[j]) for n, (i, j) in enumerate(SIDES)]
    ratios = [_geometry_ratio(g, a, p, b, tol) for a, p, b in triples]
    reduced = [ratio_from_param(lam) for lam in config.params]
    trace = dict(config.trace)
    trace["reduced_ratios"] = reduced
    trace["reduction_residuals"] = [abs(r.value - e) for r, e in zip(ratios, reduced)]
    alt = {}
    if g is Geometry.SLR:
        alt_ratios = [slr.slr_simple_ratio(a, p, b, tol) for a, p, b in triples]
        alt = {"alt_ratios": alt_ratios, "alt_label": "translation-distance"}
    return make_report(g, config.kind, ratios, trace, **alt)


# ---------------------------------------------------------------------------
# random suites
# ---------------------------------------------------------------------------

SAMPLE_BOX = 1.2
# picture conditioning filters for random draws (explicit builds use permissive defaults)
SUITE_MIN_SHAPE = 1e-3
SUITE_MIN_GAP = 1e-3
SUITE_MAX_PARAM = 20.0


def _sample_triangle(geometry: Geometry, rng) -> TriangleSpec:
    V = rng.uniform(-SAMPLE_BOX, SAMPLE_BOX, (3, 3))
    if geometry is Geometry.SOL:
        # the construction is stated from the origin; translate A0 there
        V = sol.sol_relative(V[0], V)
        V[0] = 0.0
    return TriangleSpec(geometry, V)


def _draw(geometry: Geometry, kind: str, rng, tol: Tolerances, max_resample: int):
    resampled = 0
    for _ in range(max_resample):
        try:
            tri = _sample_triangle(geometry, rng)
            if kind == "ceva":
                cfg = build_ceva(geometry, tri, rng.uniform(0.05, 1.0, 3), tol=tol, min_shape=SUITE_MIN_SHAPE)
            else:
                cfg = build_menelaus(geometry, tri, seed=rng, tol=tol, min_shape=SUITE_MIN_SHAPE,
                                     min_gap=SUITE_MIN_GAP, max_param=SUITE_MAX_PARAM)
            return verify(cfg, tol), resampled
        except (DegenerateConfiguration, LiftFailure, NotOnCurve, GeometryError):
            # SLR draws can leave the model or its chart; these are resampled too
            resampled += 1
    raise DegenerateConfiguration(f"no valid {kind} configuration after {max_resample} draws")


def _stats(devs, eps):
    devs = np.asarray(devs, dtype=float)
    if devs.size == 0:
        return {"count": 0, "max_deviation": None, "mean_deviation": None, "failures": 0}
    return {
        "count": int(devs.size),
        "max_deviation": float(devs.max()),
        "mean_deviation": float(devs.mean()),
        "failures": int(np.sum(devs > eps)),
    }


def summarize(geometry, reports, resampled: dict, tol: Tolerances = DEFAULT_TOL, trials: int | None = None):
    g = Geometry.parse(geometry)
    out: dict[str, Any] = {"geometry": g.value, "eps_theorem": tol.eps_theorem}
    if trials is not None:
        out["trials"] = int(trials)
    for kind in ("ceva", "menelaus"):
        sub = [r for r in reports if r.kind == kind]
        st = _stats([r.deviation for r in sub], tol.eps_theorem)
        st["resampled"] = int(resampled.get(kind, 0))
        if g is Geometry.SLR:
            alt = _stats([r.alt_deviation for r in sub], tol.eps_theorem)
            if alt["count"]:
                alt["verdict"] = "holds" if alt["failures"] == 0 else "fails"
            alt["label"] = "translation-distance"
            st["alt"] = alt
        out[kind] = st
    out["passed"] = all(out[k]["failures"] == 0 for k in ("ceva", "menelaus"))
    return out


def random_suite(geometry, trials: int, seed=0, tol: Tolerances = DEFAULT_TOL, max_resample: int = 1000):
    """Seeded Ceva and Menelaus trials; returns ``(reports, summary)``.

    E3/S3/H3 run the constant-curvature reference checks.
    """
    g = Geometry.parse(geometry)
    trials = int(trials)
    if trials < 0:
        raise GeometryError("trials must be non-negative")
    reports: list[TheoremReport] = []
    resampled = {"ceva": 0, "menelaus": 0}
    if trials == 0:
        return reports, summarize(g, reports, resampled, tol, trials)
    if g in (Geometry.E3, Geometry.S3, Geometry.H3):
        kind = {Geometry.E3: CCKind.EUCLIDEAN, Geometry.S3: CCKind.SPHERICAL, Geometry.H3: CCKind.HYPERBOLIC}[g]
        stats: dict = {}
        reports = cc_verify_ceva_menelaus(kind, seed=seed, trials=trials, stats=stats)
        # the reference check resamples whole trials; attribute the count to both kinds
        resampled = {"ceva": stats["resampled"], "menelaus": stats["resampled"]}
        return reports, summarize(g, reports, resampled, tol, trials)
    children = np.random.SeedSequence(seed).spawn(trials)
    for child in children:
        rng = np.random.default_rng(child)
        for kind in ("ceva", "menelaus"):
            rep, n = _draw(g, kind, rng, tol, max_resample)
            resampled[kind] += n
            reports.append(rep)
    return reports, summarize(g, reports, resampled, tol, trials)
