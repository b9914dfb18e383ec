from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from thurston_tri.core import DegenerateTarget, GeographicDirection, NotOnSurface
from thurston_tri.sol import (
    STABILIZER,
    curve_kind,
    exp_ratio,
    locate_on_curve,
    projected_curve_z,
    sol_connecting_curve,
    sol_curve,
    sol_distance,
    sol_group_inverse,
    sol_m_ratio,
    sol_map_m,
    sol_point_on_side,
    sol_project_xz,
    sol_relative,
    sol_simple_ratio,
    sol_solve,
    sol_stabilizer,
    sol_translate,
)
from thurston_tri.surface import TriangleSpec, surface_value

coord = st.floats(-1.5, 1.5)
point = st.tuples(coord, coord, coord).map(np.array)
FIG4 = [(0, 0, 0), (1.25, 0.5, 1.0), (0.2, 1.0, 0.5)]


def test_translate_examples():
    np.testing.assert_array_equal(sol_translate((0, 0, 0), (1, 2, 3)), (1, 2, 3))
    np.testing.assert_array_equal(sol_translate((1, 2, 3), (0, 0, 0)), (1, 2, 3))
    np.testing.assert_allclose(sol_translate((1, 1, 0), (0, 0, 1)), (np.exp(-1), np.e, 1), atol=1e-15)


def test_inverse(rng):
    np.testing.assert_array_equal(sol_group_inverse((0, 0, 0)), (0, 0, 0))
    np.testing.assert_array_equal(sol_group_inverse((1, 0, 0)), (-1, 0, 0))
    for g in rng.uniform(-2, 2, (100, 3)):
        assert np.linalg.norm(sol_translate(g, sol_group_inverse(g))) < 1e-13
        assert np.linalg.norm(sol_translate(sol_group_inverse(g), g)) < 1e-13


def test_stabilizer_generators():
    p = np.array([0.3, -0.8, 1.4])
    np.testing.assert_array_equal(sol_stabilizer(1, p), (0.3, 0.8, 1.4))
    np.testing.assert_array_equal(sol_stabilizer(2, p), (-0.8, 0.3, -1.4))
    np.testing.assert_array_equal(sol_stabilizer(2, sol_stabilizer(2, p)), p)


def test_stabilizer_is_closed_group_of_order_8():
    mats = [np.round(M).astype(int) for M in STABILIZER]
    keys = {M.tobytes() for M in mats}
    assert len(keys) == 8
    for A, B in itertools.product(mats, mats):
        assert (A @ B).tobytes() in keys


@given(point, point, st.integers(0, 7))
def test_stabilizer_elements_are_automorphisms(p, q, k):
    lhs = sol_stabilizer(k, sol_translate(p, q))
    rhs = sol_translate(sol_stabilizer(k, p), sol_stabilizer(k, q))
    np.testing.assert_allclose(lhs, rhs, atol=1e-12)


def test_curve_examples():
    np.testing.assert_array_equal(sol_curve(GeographicDirection(0.4, 0.3), 0.0), (0, 0, 0))
    np.testing.assert_allclose(sol_curve(GeographicDirection(0, np.pi / 2), 1.3), (0, 0, 1.3), atol=1e-15)
    s = sol_solve((1.25, 0.5, 1.0))
    np.testing.assert_allclose(sol_curve(s.dir, s.t), (1.25, 0.5, 1.0), atol=1e-14)


def test_solve_examples():
    s = sol_solve((0, 0, 0.8))
    assert s.dir.theta == pytest.approx(np.pi / 2) and s.t == pytest.approx(0.8)
    s = sol_solve((1 - np.exp(-1), 0, 1))
    np.testing.assert_allclose(s.dir.unit, (2**-0.5, 0, 2**-0.5), atol=1e-15)
    assert s.t == pytest.approx(np.sqrt(2), abs=1e-14)
    s = sol_solve((3, 4, 0))
    assert s.dir.theta == 0 and s.dir.phi == pytest.approx(np.arctan2(4, 3)) and s.t == pytest.approx(5)
    with pytest.raises(DegenerateTarget):
        sol_solve((0, 0, 0))


def test_round_trip(rng):
    for p in rng.uniform(-2, 2, (1000, 3)):
        s = sol_solve(p)
        assert np.linalg.norm(sol_curve(s.dir, s.t) - p) < 1e-10


def test_small_height_branch_is_continuous():
    # z -> 0 must approach the planar solution
    for z in (1e-6, 1e-10, 1e-14, 0.0):
        s = sol_solve((0.6, 0.8, z))
        assert s.t == pytest.approx(1.0, abs=1e-5)


@given(st.floats(-np.pi, np.pi), st.floats(-1.5, 1.5), st.floats(-1.5, 1.5), st.floats(-1.5, 1.5))
def test_one_parameter_subgroup(phi, theta, t1, t2):
    d = GeographicDirection(phi, theta)
    lhs = sol_translate(sol_curve(d, t1), sol_curve(d, t2))
    np.testing.assert_allclose(lhs, sol_curve(d, t1 + t2), atol=1e-10)


def test_distance_examples_and_invariance(rng):
    assert sol_distance((1, 2, 3), (1, 2, 3)) == 0.0
    assert sol_distance((0, 0, 0), (0, 0, -1.5)) == pytest.approx(1.5)
    for _ in range(200):
        a, b, g = rng.uniform(-1.2, 1.2, (3, 3))
        d0 = sol_distance(a, b)
        assert sol_distance(sol_translate(a, g), sol_translate(b, g)) == pytest.approx(d0, abs=1e-10)
        k = int(rng.integers(8))
        assert sol_distance(sol_stabilizer(k, a), sol_stabilizer(k, b)) == pytest.approx(d0, abs=1e-10)


def test_projection_examples():
    np.testing.assert_array_equal(sol_project_xz((1.25, 0.5, 1)), (1.25, 1))
    flat = sol_project_xz(sol_curve(GeographicDirection(0.7, 0.0), np.linspace(0, 2, 9)))
    assert np.all(flat[:, 1] == 0)


def test_projected_curves_follow_log_law(rng):
    for _ in range(200):
        phi = rng.uniform(-1.4, 1.4)
        theta = rng.uniform(-1.4, 1.4)
        if abs(theta) < 1e-3:
            continue
        d = GeographicDirection(phi, theta)
        pts = sol_project_xz(sol_curve(d, np.linspace(0, rng.uniform(0.1, 2.0), 30)))
        np.testing.assert_allclose(pts[:, 1], projected_curve_z(pts[:, 0], d), atol=1e-9)


def test_map_m_examples():
    np.testing.assert_array_equal(sol_map_m((0, 0)), (0, 1))
    np.testing.assert_allclose(sol_map_m((1.25, 1)), (1.25, np.exp(-1)))


def test_m_images_are_collinear(rng):
    for _ in range(200):
        a = rng.uniform(-1.2, 1.2, 3)
        d = GeographicDirection(rng.uniform(-np.pi, np.pi), rng.uniform(-1.4, 1.4))
        pts = sol_translate(sol_curve(d, np.linspace(0, 1.5, 100)), a)
        m = sol_map_m(sol_project_xz(pts))
        e = m - m[0]
        cross = e[:, 0] * e[-1, 1] - e[:, 1] * e[-1, 0]
        assert np.max(np.abs(cross)) < 1e-10


def test_ratio_planar_case():
    s = sol_solve((1.0, -0.4, 0.0))
    p = sol_curve(s.dir, s.t / 2)
    assert sol_simple_ratio((0, 0, 0), p, (1.0, -0.4, 0.0)).value == pytest.approx(1.0, abs=1e-12)
    assert curve_kind(s.dir.unit) == "xy"


def test_ratio_equals_m_image_ratio_inside_and_outside(rng):
    n = 0
    while n < 1000:
        a, b = rng.uniform(-1.2, 1.2, (2, 3))
        s = sol_solve(sol_relative(a, b))
        lam = rng.uniform(-0.6, 1.6)
        if min(abs(lam), abs(lam - 1)) < 1e-2:
            continue
        p = sol_point_on_side(a, s, lam * s.t)
        r = sol_simple_ratio(a, p, b)
        m = sol_m_ratio(a, p, b)
        assert r.between == (0 < lam < 1)
        assert abs(r.value - m) < 1e-10 * max(1.0, abs(m))
        n += 1


def test_exp_ratio_hand_value():
    w = np.sin(0.4)
    val = exp_ratio(w, 1.0, 2.0)
    assert val == pytest.approx((1 - np.exp(-w)) / (np.exp(-w) - np.exp(-2 * w)), rel=1e-14)


def test_yz_conjugation_clause_scales_by_endpoint_factor():
    # documented behaviour: on a [y,z]-type curve the conjugated formula equals
    # tau_b times the m-image ratio, tau_b = exp(-w t_b) of the original curve
    a, b = np.zeros(3), np.array([0.0, 0.7, 0.5])
    s = sol_solve(b)
    p = sol_curve(s.dir, 0.3 * s.t)
    t_p, t_b, unit = locate_on_curve(a, p, b)
    assert curve_kind(unit) == "yz"
    r = sol_simple_ratio(a, p, b).value
    assert r == pytest.approx(np.exp(-unit[2] * t_b) * sol_m_ratio(a, p, b), rel=1e-10)


def test_connecting_curve():
    tri = TriangleSpec("sol", FIG4)
    s = sol_solve(sol_relative(FIG4[1], FIG4[2]))
    p1 = sol_point_on_side(np.array(FIG4[1]), s, 0.4 * s.t)
    s0 = sol_solve(FIG4[1])
    p2 = sol_curve(s0.dir, 0.5 * s0.t)
    line = sol_connecting_curve(tri, p1, p2, n=24)
    assert np.linalg.norm(line[0] - p1) < 1e-8 and np.linalg.norm(line[-1] - p2) < 1e-8
    for q in line[1:-1]:
        assert abs(surface_value(tri, q)) < 1e-7
    h = sol_map_m(sol_project_xz(line))
    e = h - h[0]
    assert np.max(np.abs(e[:, 0] * e[-1, 1] - e[:, 1] * e[-1, 0])) < 1e-10
    single = sol_connecting_curve(tri, p1, p1)
    assert single.shape == (1, 3)
    with pytest.raises(NotOnSurface):
        sol_connecting_curve(tri, p1 + np.array([0, 0, 0.3]), p2)
