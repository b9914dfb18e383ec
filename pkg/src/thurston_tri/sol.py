"""Sol geometry: translations, the D4 stabiliser, translation curves, ratios.

Curves from the origin with unit tangent (u, v, w) are

    x = u g(w, t),  y = v g(-w, t),  z = w t,   g(w, t) = (1 - e^{-w t}) / w,

with ``g(0, t) = t``.  ``expm1`` keeps the small-``w`` regime accurate, so the
``theta = 0`` branch is the continuous limit of the general one.
"""

from __future__ import annotations

import numpy as np

from .core import (
    DEFAULT_TOL,
    CurveSolution,
    DegeneratePair,
    DegenerateTarget,
    GeographicDirection,
    Geometry,
    GeometryError,
    NoIntersection,
    NotOnCurve,
    NotOnSurface,
    SignedRatio,
    Tolerances,
    as_point,
    bisect_many,
)

SolDirection = GeographicDirection
SolCurveSolution = CurveSolution

# curves whose tangent components fall below this are treated as lying in a coordinate plane
PLANE_EPS = 1e-14


def sol_translate(p, by):
    """Image of ``p`` under the translation taking the origin to ``by``."""
    p = as_point(p)
    g = as_point(by)
    ez = np.exp(g[..., 2])
    return np.stack(
        [g[..., 0] + p[..., 0] / ez, g[..., 1] + p[..., 1] * ez, g[..., 2] + p[..., 2]], axis=-1
    )


def sol_group_inverse(g):
    g = as_point(g)
    ez = np.exp(g[..., 2])
    return np.stack([-g[..., 0] * ez, -g[..., 1] / ez, -g[..., 2]], axis=-1)


def sol_relative(a, b):
    """``b`` carried by the translation that takes ``a`` to the origin."""
    return sol_translate(b, sol_group_inverse(a))


_S1 = np.diag([1.0, -1.0, 1.0])
_S2 = np.array([[0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, -1.0]])
_R = np.array([[0.0, 1.0, 0.0], [-1.0, 0.0, 0.0], [0.0, 0.0, -1.0]])

#: The eight linear isometries fixing the origin (a dihedral group of order 8).
#: Index 1 is generator (1) ``y -> -y``; index 2 is generator (2) ``x <-> y, z -> -z``.
STABILIZER = (
    np.eye(3),
    _S1,
    _S2,
    _R,
    _R @ _R,
    _R @ _R @ _R,
    _S1 @ _R @ _R,
    _S2 @ _R @ _R,
)


def sol_stabilizer(k: int, p):
    if not 0 <= int(k) < 8:
        raise GeometryError(f"stabilizer index must be in 0..7, got {k}")
    p = as_point(p)
    return p @ STABILIZER[int(k)].T


def _g(w, t):
    w = np.asarray(w, dtype=float)
    t = np.asarray(t, dtype=float)
    safe = np.where(w == 0, 1.0, w)
    return np.where(w == 0, t, -np.expm1(-w * t) / safe)


def curve_from_unit(unit, t):
    unit = np.asarray(unit, dtype=float)
    u, v, w = unit[..., 0], unit[..., 1], unit[..., 2]
    t = np.asarray(t, dtype=float)
    return np.stack([u * _g(w, t), v * _g(-w, t), w * t], axis=-1)


def solve_unit(q):
    """Vectorised inverse problem; zero targets give a zero tangent and ``t = 0``."""
    q = np.asarray(q, dtype=float)
    x, y, z = q[..., 0], q[..., 1], q[..., 2]
    flat = z == 0
    zs = np.where(flat, 1.0, z)
    p = x / -np.expm1(-zs)
    r = y / np.expm1(zs)
    w = np.sign(zs) / np.sqrt(p * p + r * r + 1.0)
    t_gen = zs / w
    unit_gen = np.stack([p * w, r * w, w], axis=-1)

    t_flat = np.hypot(x, y)
    safe = np.where(t_flat > 0, t_flat, 1.0)
    unit_flat = np.stack([x / safe, y / safe, np.zeros_like(x)], axis=-1)

    t = np.where(flat, t_flat, t_gen)
    unit = np.where(flat[..., None], unit_flat, unit_gen)
    return unit, t


def sol_curve(dir: SolDirection, t):
    return curve_from_unit(dir.unit, t)


def sol_solve(target) -> SolCurveSolution:
    target = as_point(target, "target")
    if not np.any(target):
        raise DegenerateTarget("the origin has no connecting translation curve")
    unit, t = solve_unit(target)
    return CurveSolution(SolDirection.from_unit(unit), float(t))


def sol_distance(a, b) -> float:
    _, t = solve_unit(sol_relative(as_point(a), as_point(b)))
    return float(t)


def sol_point_on_side(a, sol: SolCurveSolution, t):
    return sol_translate(sol_curve(sol.dir, t), a)


def sol_project_xz(p):
    p = as_point(p)
    return p[..., [0, 2]].copy()


def sol_map_m(q):
    """Chart ``(x, z) -> (x, e^{-z})`` onto the upper half-plane."""
    q = np.asarray(q, dtype=float)
    return np.stack([q[..., 0], np.exp(-q[..., 1])], axis=-1)


def sol_map_m_inverse(h):
    h = np.asarray(h, dtype=float)
    if np.any(h[..., 1] <= 0):
        raise GeometryError("half-plane points need x2 > 0")
    return np.stack([h[..., 0], -np.log(h[..., 1])], axis=-1)


def projected_curve_z(x, dir: SolDirection):
    """Height of the [x,z]-projected translation curve from the origin over ``x``.

    ``z = -log(1 - x tan(theta) / cos(phi))``; valid for curves outside the
    [x,y] and [y,z] planes.
    """
    return -np.log1p(-np.asarray(x, dtype=float) * np.tan(dir.theta) / np.cos(dir.phi))


def locate_on_curve(a, p, b, tol: Tolerances = DEFAULT_TOL):
    """Signed parameter of ``p`` on the translation curve from ``a`` to ``b``.

    Returns ``(t_p, t_b, unit)`` where ``unit`` is the initial tangent at ``a``
    (carried to the origin).
    """
    qb = sol_relative(a, b)
    qp = sol_relative(a, p)
    if not np.any(qb):
        raise DegeneratePair("curve endpoints coincide")
    unit, t_b = solve_unit(qb)
    u, v, w = unit
    if w != 0.0:
        t_p = float(qp[2] / w)
    else:
        t_p = float(qp[0] * u + qp[1] * v)
    resid = float(np.linalg.norm(curve_from_unit(unit, t_p) - qp))
    scale = max(1.0, float(t_b), abs(t_p), float(np.linalg.norm(qp)))
    if resid > tol.eps_alg * scale:
        raise NotOnCurve(f"point is {resid:.3e} off the translation curve")
    return t_p, float(t_b), unit


def exp_ratio(w: float, t_p: float, t_b: float) -> float:
    """(1 - e^{-w t_p}) / (e^{-w t_p} - e^{-w t_b}), written with expm1."""
    num = -np.expm1(-w * t_p)
    den = np.exp(-w * t_p) * -np.expm1(-w * (t_b - t_p))
    return float(num / den)


def curve_kind(unit) -> str:
    """Which clause of the ratio definition applies to a curve with this tangent."""
    u, v, w = (float(c) for c in unit)
    if abs(u) <= PLANE_EPS and abs(v) <= PLANE_EPS:
        return "fibre"
    if abs(w) <= PLANE_EPS:
        return "xy"
    if abs(u) <= PLANE_EPS:
        return "yz"
    return "general"


def sol_simple_ratio(a, p, b, tol: Tolerances = DEFAULT_TOL) -> SignedRatio:
    a, p, b = as_point(a), as_point(p), as_point(b)
    t_p, t_b, unit = locate_on_curve(a, p, b, tol)
    if t_p == 0.0 or t_p == t_b:
        raise DegeneratePair("division point coincides with an endpoint")
    between = 0.0 < t_p < t_b
    kind = curve_kind(unit)
    if kind in ("fibre", "xy"):
        d_ap = sol_distance(a, p)
        d_pb = sol_distance(p, b)
        value = d_ap / d_pb if between else -d_ap / d_pb
    elif kind == "yz":
        # carry the [y,z]-type curve onto an [x,z]-type one by generator (2)
        qb = sol_stabilizer(2, sol_relative(a, b))
        qp = sol_stabilizer(2, sol_relative(a, p))
        zero = np.zeros(3)
        t_p2, t_b2, unit2 = locate_on_curve(zero, qp, qb, tol)
        value = exp_ratio(float(unit2[2]), t_p2, t_b2)
    else:
        value = exp_ratio(float(unit[2]), t_p, t_b)
        # second route: the Euclidean ratio of the m-images must agree
        other = sol_m_ratio(a, p, b, tol=np.inf)
        if abs(value - other) > 1e-8 * max(1.0, abs(other)):
            raise NotOnCurve(f"ratio {value!r} disagrees with its m-image ratio {other!r}")
    return SignedRatio(value, between, Geometry.SOL)


def sol_m_ratio(a, p, b, tol: float = 1e-9) -> float:
    """Euclidean signed ratio of the m-images of the [x,z] projections."""
    from .core import euclid_signed_ratio

    ma, mp, mb = (sol_map_m(sol_project_xz(as_point(x))) for x in (a, p, b))
    return euclid_signed_ratio(ma, mp, mb, tol=tol).value


def sol_connecting_curve(surface, p1, p2, n: int = 32, tol: float = 1e-7):
    """Polyline joining two points of a Sol translation-triangle surface.

    Triangles in the [x,z] or [y,z] plane use the in-plane translation curve;
    otherwise the curve is cut from the surface by the cylinder of y-parallel
    lines over the m-preimage of the Euclidean segment ``p1^m p2^m``.  When the
    two projections coincide the cutting surface is the plane x = const.
    """
    from .surface import surface_value, triangle_plane_kind

    p1 = as_point(p1, "p1")
    p2 = as_point(p2, "p2")
    for q in (p1, p2):
        if abs(surface_value(surface, q)) > tol:
            raise NotOnSurface(f"{q} is not on the triangle surface")
    if np.allclose(p1, p2, rtol=0, atol=1e-14):
        return p1[None, :].copy()
    s = np.linspace(0.0, 1.0, n)

    if triangle_plane_kind(surface) in ("xz", "yz"):
        unit, t_b = solve_unit(sol_relative(p1, p2))
        return sol_translate(curve_from_unit(unit, s * t_b), p1)

    h1 = sol_map_m(sol_project_xz(p1))
    h2 = sol_map_m(sol_project_xz(p2))
    if np.allclose(h1, h2, rtol=0, atol=1e-14):
        # projections coincide: cut by the plane x = const, walk along y, solve for z
        ys = p1[1] + s * (p2[1] - p1[1])
        base = np.stack([np.full_like(ys, p1[0]), ys, np.zeros_like(ys)], axis=-1)
        guess = p1[2] + s * (p2[2] - p1[2])
        axis = 2
    else:
        h = h1 + s[:, None] * (h2 - h1)
        xz = sol_map_m_inverse(h)
        base = np.stack([xz[:, 0], np.zeros(n), xz[:, 1]], axis=-1)
        guess = p1[1] + s * (p2[1] - p1[1])
        axis = 1
    out = _roots_along_axis(surface, base, guess, axis, p1, p2)
    out[0], out[-1] = p1, p2
    return out


def _roots_along_axis(surface, base, guess, axis, p1, p2, cells: int = 64):
    from .surface import surface_value_many

    span = max(1.0, 2.0 * abs(p2[axis] - p1[axis]))
    lo_all = guess - span
    hi_all = guess + span
    n = len(base)
    grid = np.linspace(0.0, 1.0, cells + 1)
    coords = lo_all[:, None] + grid[None, :] * (hi_all - lo_all)[:, None]
    pts = np.repeat(base[:, None, :], cells + 1, axis=1)
    pts[..., axis] = coords
    vals = surface_value_many(surface, pts.reshape(-1, 3)).reshape(n, cells + 1)
    out = base.copy()
    out[:, axis] = guess
    for i in range(1, n - 1):
        f = vals[i]
        idx = np.nonzero(np.sign(f[:-1]) * np.sign(f[1:]) <= 0)[0]
        idx = idx[np.isfinite(f[idx]) & np.isfinite(f[idx + 1])]
        if idx.size == 0:
            raise NoIntersection(f"cutting line {i} does not meet the surface")
        j = idx[np.argmin(np.abs(coords[i, idx] - guess[i]))]
        row = base[i]

        def fa(c, row=row):
            q = np.repeat(row[None, :], np.size(c), axis=0)
            q[:, axis] = c
            return surface_value_many(surface, q)

        out[i, axis] = bisect_many(fa, [coords[i, j]], [coords[i, j + 1]], tol=1e-13)[0]
    return out
