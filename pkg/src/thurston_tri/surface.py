"""Translation-triangle surfaces as the zero set of a coplanarity determinant.

A point P lies on the surface of the triangle A0 A1 A2 when the tangents at P
of the translation curves running from P to the three vertices are coplanar.
``surface_value`` is the determinant of the three unit tangents.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np
from matplotlib.path import Path

from . import nil, sol
from .core import (
    DEFAULT_TOL,
    DegeneratePair,
    DegeneratePoint,
    DegenerateTriangle,
    Geometry,
    GeometryError,
    Tolerances,
    as_point,
    bisect_many,
    det3,
)
from .slr import slr_valid

VERTEX_BALL = 1e-9
SURFACE_TOL = 1e-7


@dataclass(frozen=True)
class TriangleSpec:
    geometry: Geometry
    vertices: np.ndarray

    def __init__(self, geometry, vertices):
        verts = as_point(vertices, "vertices").reshape(3, 3).copy()
        verts.setflags(write=False)
        object.__setattr__(self, "geometry", Geometry.parse(geometry))
        object.__setattr__(self, "vertices", verts)
        if self.geometry not in (Geometry.NIL, Geometry.SOL, Geometry.SLR):
            raise GeometryError(f"surfaces are defined for Nil, Sol and SLR, not {self.geometry.value}")
        for i in range(3):
            for j in range(i + 1, 3):
                if np.allclose(verts[i], verts[j], rtol=0, atol=1e-14):
                    raise DegenerateTriangle(f"vertices {i} and {j} coincide")
        if self.geometry is Geometry.SLR and not all(slr_valid(v) for v in verts):
            raise DegenerateTriangle("SLR vertices must lie inside the hyperboloid solid")


SolTriangleSurface = TriangleSpec


def tangent_toward(geometry, p, a):
    """Unit tangent at ``p`` of the translation curve from ``p`` towards ``a``.

    Broadcasts over leading axes of ``p``; returns NaN rows where ``p == a``.
    """
    geometry = Geometry.parse(geometry)
    p = np.asarray(p, dtype=float)
    a = np.asarray(a, dtype=float)
    if geometry is Geometry.NIL:
        q = nil.nil_translate(a, nil.nil_inverse_translation(p))
        unit, t = nil.solve_unit(q)
        # differential of the translation carrying the origin to p
        tan = np.stack([unit[..., 0], unit[..., 1], unit[..., 2] + unit[..., 1] * p[..., 0]], axis=-1)
    elif geometry is Geometry.SOL:
        q = sol.sol_translate(a, sol.sol_group_inverse(p))
        unit, t = sol.solve_unit(q)
        ez = np.exp(p[..., 2])
        tan = np.stack([unit[..., 0] / ez, unit[..., 1] * ez, unit[..., 2]], axis=-1)
    elif geometry is Geometry.SLR:
        tan = a - p
        t = np.linalg.norm(tan, axis=-1)
    else:
        raise GeometryError(f"no translation-curve tangents for {geometry.value}")
    n = np.linalg.norm(tan, axis=-1, keepdims=True)
    with np.errstate(invalid="ignore", divide="ignore"):
        out = np.where((np.asarray(t) > 0)[..., None], tan / n, np.nan)
    return out


def surface_value_many(tri: TriangleSpec, pts):
    """Coplanarity determinant at many points; NaN inside the vertex balls."""
    pts = np.asarray(pts, dtype=float)
    near = np.zeros(pts.shape[:-1], dtype=bool)
    for v in tri.vertices:
        near |= np.linalg.norm(pts - v, axis=-1) < VERTEX_BALL
    t0, t1, t2 = (tangent_toward(tri.geometry, pts, v) for v in tri.vertices)
    val = det3(t0, t1, t2)
    return np.where(near, np.nan, val)


def surface_value(tri: TriangleSpec, p) -> float:
    p = as_point(p)
    for v in tri.vertices:
        if np.linalg.norm(p - v) < VERTEX_BALL:
            raise DegeneratePoint("surface value is undefined at a vertex")
    return float(surface_value_many(tri, p[None, :])[0])


def triangle_plane_kind(tri: TriangleSpec) -> str | None:
    """Name of the coordinate-plane family holding the triangle, if any.

    Nil: a shared x (``"yz"``) or y (``"xz"``) makes every side a Euclidean segment.
    Sol: seen from A0, a vanishing x / y / z coordinate of A1 and A2 gives ``"yz"`` /
    ``"xz"`` / ``"xy"``.  SLR triangles are always planar (``"plane"``).
    """
    v = tri.vertices
    if tri.geometry is Geometry.SLR:
        return "plane"
    if tri.geometry is Geometry.NIL:
        rel = v - v[0]
    else:
        rel = sol.sol_relative(v[0], v)
    for axis, name in ((0, "yz"), (1, "xz"), (2, "xy") if tri.geometry is Geometry.SOL else (None, None)):
        if axis is not None and np.all(np.abs(rel[1:, axis]) <= 1e-14):
            return name
    return None


def vertex_plane(tri: TriangleSpec):
    """Unit normal and offset of the Euclidean plane through the vertices."""
    v = tri.vertices
    n = np.cross(v[1] - v[0], v[2] - v[0])
    nn = np.linalg.norm(n)
    if nn == 0:
        raise DegenerateTriangle("vertices are collinear")
    n = n / nn
    return n, float(np.dot(n, v[0]))


def side_polyline(tri: TriangleSpec, i: int, j: int, n: int = 200):
    """Samples of the side from vertex i to vertex j (endpoints included)."""
    a, b = tri.vertices[i], tri.vertices[j]
    s = np.linspace(0.0, 1.0, n)
    if tri.geometry is Geometry.NIL:
        unit, t = nil.solve_unit(nil.nil_translate(b, nil.nil_inverse_translation(a)))
        if t == 0:
            raise DegeneratePair("side endpoints coincide")
        return nil.nil_translate(nil.curve_from_unit(unit, s * t), a)
    if tri.geometry is Geometry.SOL:
        unit, t = sol.solve_unit(sol.sol_relative(a, b))
        return sol.sol_translate(sol.curve_from_unit(unit, s * t), a)
    return a + s[:, None] * (b - a)


@dataclass
class Mesh:
    vertices: np.ndarray
    faces: np.ndarray
    residuals: np.ndarray
    coverage: float
    metadata: dict[str, Any] = field(default_factory=dict)

    @property
    def max_residual(self) -> float:
        return float(np.max(np.abs(self.residuals))) if len(self.residuals) else 0.0


def _planar_mesh(tri: TriangleSpec, n: int) -> Mesh:
    v = tri.vertices
    idx = {}
    pts = []
    m = n - 1
    for i in range(m + 1):
        for j in range(m + 1 - i):
            k = m - i - j
            if max(i, j, k) == m:
                continue  # the vertices themselves
            idx[i, j] = len(pts)
            pts.append((k * v[0] + i * v[1] + j * v[2]) / m)
    faces = []
    for i in range(m):
        for j in range(m - i):
            for tri_ij in (((i, j), (i + 1, j), (i, j + 1)), ((i + 1, j), (i + 1, j + 1), (i, j + 1))):
                if all(c in idx for c in tri_ij):
                    faces.append([idx[c] for c in tri_ij])
    pts = np.array(pts)
    res = surface_value_many(tri, pts)
    meta = {"method": "exact plane", "plane_kind": triangle_plane_kind(tri)}
    return Mesh(pts, np.array(faces, dtype=int).reshape(-1, 3), res, 1.0, meta)


def surface_mesh(tri: TriangleSpec, resolution: int = 64, tol: Tolerances = DEFAULT_TOL,
                 scan_cells: int = 64) -> Mesh:
    """Sample the surface on an ``resolution x resolution`` grid over its footprint.

    SLR and plane-type triangles are meshed exactly.  Otherwise each grid point
    of the [x,y] footprint (region bounded by the projected sides) is a vertical
    line; its roots are bracketed by a ``scan_cells``-cell scan and bisected, and
    the root nearest to the vertex plane is kept.
    """
    n = int(resolution)
    if n < 2:
        raise GeometryError("resolution must be at least 2")
    if tri.geometry is Geometry.SLR or triangle_plane_kind(tri) is not None:
        return _planar_mesh(tri, n)

    ring = np.concatenate([side_polyline(tri, 0, 1)[:-1], side_polyline(tri, 1, 2)[:-1],
                           side_polyline(tri, 2, 0)[:-1]])
    foot = Path(ring[:, :2])
    lo_xy = ring[:, :2].min(axis=0)
    hi_xy = ring[:, :2].max(axis=0)
    gx = np.linspace(lo_xy[0], hi_xy[0], n)
    gy = np.linspace(lo_xy[1], hi_xy[1], n)
    X, Y = np.meshgrid(gx, gy, indexing="ij")
    inside = foot.contains_points(np.stack([X.ravel(), Y.ravel()], axis=-1)).reshape(n, n)
    cols = np.argwhere(inside)
    if len(cols) == 0:
        raise DegenerateTriangle("footprint has no interior grid points")

    zv = tri.vertices[:, 2]
    spread = float(zv.max() - zv.min())
    delta = 2.0 * spread if spread > 0 else 1.0
    zs = np.linspace(zv.min() - delta, zv.max() + delta, scan_cells + 1)
    xy = np.stack([X[inside], Y[inside]], axis=-1)
    m = len(xy)
    pts = np.empty((m, scan_cells + 1, 3))
    pts[..., 0] = xy[:, None, 0]
    pts[..., 1] = xy[:, None, 1]
    pts[..., 2] = zs[None, :]
    F = surface_value_many(tri, pts.reshape(-1, 3)).reshape(m, scan_cells + 1)

    sign_change = (np.sign(F[:, :-1]) * np.sign(F[:, 1:]) <= 0) & np.isfinite(F[:, :-1]) & np.isfinite(F[:, 1:])
    roots_per = sign_change.sum(axis=1)
    ci, cj = np.nonzero(sign_change)
    lo = zs[cj]
    hi = zs[cj + 1]
    base = xy[ci]

    def f(z):
        q = np.column_stack([base, z])
        return surface_value_many(tri, q)

    z_root = bisect_many(f, lo, hi, tol=tol.eps_root)
    cand = np.column_stack([base, z_root])
    normal, offset = vertex_plane(tri)
    dist = np.abs(cand @ normal - offset)

    chosen = np.full(m, -1)
    best = np.full(m, np.inf)
    for r, (col, d) in enumerate(zip(ci, dist)):
        if d < best[col]:
            best[col] = d
            chosen[col] = r
    found = chosen >= 0
    others = np.setdiff1d(np.arange(len(cand)), chosen[found])
    grid_index = -np.ones((n, n), dtype=int)
    verts = cand[chosen[found]]
    res = surface_value_many(tri, verts)
    good = np.abs(res) < SURFACE_TOL
    keep_cols = np.nonzero(found)[0][good]
    verts = verts[good]
    res = res[good]
    for k, c in enumerate(keep_cols):
        i, j = cols[c]
        grid_index[i, j] = k

    faces = []
    for i in range(n - 1):
        for j in range(n - 1):
            a, b, c, d = grid_index[i, j], grid_index[i + 1, j], grid_index[i, j + 1], grid_index[i + 1, j + 1]
            if a >= 0 and b >= 0 and c >= 0:
                faces.append([a, b, c])
            if b >= 0 and d >= 0 and c >= 0:
                faces.append([b, d, c])
    meta = {
        "method": "fibre bracketing",
        "footprint_points": int(m),
        "multi_root_samples": int(np.sum(roots_per > 1)),
        "extra_roots": cand[others].tolist(),
        "unbracketed_samples": int(np.sum(roots_per == 0)),
        "rejected_residual": int(np.sum(~good)),
        "root_policy": "closest to the Euclidean plane of the vertices",
        "z_scan": [float(zs[0]), float(zs[-1]), scan_cells],
    }
    coverage = len(verts) / m
    return Mesh(verts, np.array(faces, dtype=int).reshape(-1, 3), res, float(coverage), meta)
