"""Nil geometry in the affine chart of its projective model.

Translations act on the right: ``nil_translate(p, by)`` is the image of ``p``
under the translation carrying the origin to ``by``.  Translation curves from
the origin are one-parameter subgroups

    x = u t,  y = v t,  z = u v t^2 / 2 + w t,

so ``(x, y, z - x y / 2) = t (u, v, w)`` and the inverse problem is closed form.
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
    NotOnCurve,
    SignedRatio,
    Tolerances,
    as_point,
)

NilDirection = GeographicDirection
NilCurveSolution = CurveSolution


def nil_translate(p, by):
    """Apply the translation taking the origin to ``by`` to the point ``p``."""
    p = as_point(p)
    g = as_point(by)
    x = g[..., 0] + p[..., 0]
    y = g[..., 1] + p[..., 1]
    z = g[..., 2] + p[..., 1] * g[..., 0] + p[..., 2]
    return np.stack([x, y, z], axis=-1)


def nil_inverse_translation(a):
    """Translation ``tau`` with ``nil_translate(a, tau) == 0``."""
    a = as_point(a)
    return np.stack([-a[..., 0], -a[..., 1], a[..., 0] * a[..., 1] - a[..., 2]], axis=-1)


def nil_rotation(omega, p):
    """Rotation by ``omega`` about the fibre through the origin (quadratic in x, y)."""
    p = as_point(p)
    x, y, z = p[..., 0], p[..., 1], p[..., 2]
    c, s = np.cos(omega), np.sin(omega)
    xr = x * c - y * s
    yr = x * s + y * c
    zr = z - 0.5 * x * y + 0.25 * (x * x - y * y) * np.sin(2 * omega) + 0.5 * x * y * np.cos(2 * omega)
    return np.stack([xr, yr, zr], axis=-1)


def _reduced(q):
    # coordinates in which translation curves from the origin are straight rays
    q = np.asarray(q, dtype=float)
    return np.stack([q[..., 0], q[..., 1], q[..., 2] - 0.5 * q[..., 0] * q[..., 1]], axis=-1)


def curve_from_unit(unit, t):
    unit = np.asarray(unit, dtype=float)
    t = np.asarray(t, dtype=float)
    u, v, w = unit[..., 0], unit[..., 1], unit[..., 2]
    return np.stack([u * t, v * t, 0.5 * u * v * t * t + w * t], axis=-1)


def solve_unit(q):
    """Vectorised inverse problem: unit initial tangents and lengths for targets ``q``.

    Zero targets come back with a zero tangent and ``t = 0``.
    """
    r = _reduced(q)
    t = np.linalg.norm(r, axis=-1)
    safe = np.where(t > 0, t, 1.0)
    return r / safe[..., None], t


def nil_curve(dir: NilDirection, t):
    """Point at parameter ``t`` of the translation curve from the origin."""
    return curve_from_unit(dir.unit, t)


def nil_solve(target) -> NilCurveSolution:
    target = as_point(target, "target")
    unit, t = solve_unit(target)
    if t == 0.0:
        raise DegenerateTarget("the origin has no connecting translation curve")
    return CurveSolution(NilDirection.from_unit(unit), float(t))


def nil_relative(a, b):
    """``b`` seen from ``a``: the image of ``b`` under the translation taking ``a`` to the origin."""
    return nil_translate(b, nil_inverse_translation(a))


def nil_distance(a, b) -> float:
    a = as_point(a)
    b = as_point(b)
    _, t = solve_unit(nil_relative(a, b))
    return float(t)


def nil_point_on_side(a, sol: NilCurveSolution, t):
    """Point at parameter ``t`` of the translation curve leaving ``a`` in direction ``sol.dir``."""
    return nil_translate(nil_curve(sol.dir, t), a)


def nil_fibre_project(p):
    p = as_point(p)
    return p[..., :2].copy()


def nil_curve_param(a, p, b, tol: Tolerances = DEFAULT_TOL):
    """Locate ``p`` on the translation curve from ``a`` to ``b``.

    Returns ``(t_p, t_b, solution)``; ``t_p`` may be negative or exceed ``t_b``.
    """
    a, p, b = as_point(a), as_point(p), as_point(b)
    sol = nil_solve(nil_relative(a, b))
    unit = sol.dir.unit
    rp = _reduced(nil_relative(a, p))
    t_p = float(np.dot(rp, unit))
    resid = float(np.linalg.norm(rp - t_p * unit))
    scale = max(1.0, sol.t, abs(t_p))
    if resid > tol.eps_alg * scale:
        raise NotOnCurve(f"point is {resid:.3e} off the translation curve")
    return t_p, sol.t, sol


def nil_simple_ratio(a, p, b, tol: Tolerances = DEFAULT_TOL) -> SignedRatio:
    """Signed ratio d(A,P)/d(P,B) of translation distances along one translation curve."""
    t_p, t_b, _ = nil_curve_param(a, p, b, tol)
    d_ap = nil_distance(a, p)
    d_pb = nil_distance(p, b)
    if d_ap == 0.0 or d_pb == 0.0:
        raise DegeneratePair("division point coincides with an endpoint")
    between = 0.0 < t_p < t_b
    value = d_ap / d_pb if between else -d_ap / d_pb
    return SignedRatio(value, between, Geometry.NIL)
