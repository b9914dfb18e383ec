from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from thurston_tri.core import (
    GeographicDirection,
    Geometry,
    GeometryError,
    NoBracket,
    SignedRatio,
    Tolerances,
    det3,
    euclid_signed_ratio,
    make_report,
    solve_bracketed_root,
    unit_to_geographic,
)

vec = st.lists(st.floats(-10, 10), min_size=3, max_size=3).map(np.array)


def test_det3_examples():
    assert det3((1, 0, 0), (0, 1, 0), (0, 0, 1)) == 1
    assert det3((1, 0, 0), (1, 0, 0), (0, 1, 0)) == 0
    assert det3((2, 0, 0), (0, 3, 0), (0, 0, 4)) == 24


@given(vec, vec, vec, vec, st.floats(-5, 5))
def test_det3_multilinear_and_alternating(a, b, c, d, s):
    lhs = det3(a + s * d, b, c)
    rhs = det3(a, b, c) + s * det3(d, b, c)
    assert lhs == pytest.approx(rhs, abs=1e-9 * (1 + abs(rhs)) * 1e3)
    assert det3(a, b, c) == pytest.approx(-det3(b, a, c), abs=1e-9)
    assert det3(a, a, c) == pytest.approx(0.0, abs=1e-9)


def test_det3_matches_numpy(rng):
    M = rng.normal(size=(500, 3, 3))
    ours = det3(M[:, 0], M[:, 1], M[:, 2])
    np.testing.assert_allclose(ours, np.linalg.det(M), atol=1e-12)


def test_root_examples():
    assert solve_bracketed_root(lambda x: x - 2, 0, 5) == pytest.approx(2.0, abs=1e-12)
    assert solve_bracketed_root(lambda x: x * x - 2, 1, 2) == pytest.approx(math.sqrt(2), abs=1e-12)
    with pytest.raises(NoBracket):
        solve_bracketed_root(lambda x: x + 1, 0, 1)


def test_root_on_random_monotone_cubics(rng):
    for _ in range(1000):
        a, b = rng.uniform(0.1, 3.0, 2)
        r0 = rng.uniform(-2, 2)
        # x^3 a + b x is strictly increasing; shift so the root is r0
        f = lambda x: a * (x**3 - r0**3) + b * (x - r0)  # noqa: E731
        lo, hi = r0 - rng.uniform(0.1, 3), r0 + rng.uniform(0.1, 3)
        r = solve_bracketed_root(f, lo, hi, tol=1e-12)
        assert abs(f(r)) <= 1e-12 * max(1.0, abs(f(lo)), abs(f(hi))) * 10
        assert r == pytest.approx(r0, abs=1e-10)


def test_signed_ratio_sign_contract():
    SignedRatio(0.5, True, Geometry.NIL)
    SignedRatio(-0.5, False, Geometry.NIL)
    with pytest.raises(GeometryError):
        SignedRatio(-0.5, True, Geometry.NIL)
    with pytest.raises(GeometryError):
        SignedRatio(0.5, False, Geometry.NIL)


def test_tolerances_validated():
    with pytest.raises(GeometryError):
        Tolerances(eps_alg=0.0)
    with pytest.raises(GeometryError):
        Tolerances(eps_theorem=float("nan"))


@given(st.floats(-math.pi + 1e-6, math.pi), st.floats(-1.5, 1.5))
def test_geographic_round_trip(phi, theta):
    d = GeographicDirection(phi, theta)
    assert np.linalg.norm(d.unit) == pytest.approx(1.0, abs=1e-14)
    p2, t2 = unit_to_geographic(d.unit)
    np.testing.assert_allclose(GeographicDirection(float(p2), float(t2)).unit, d.unit, atol=1e-14)


def test_geometry_parse():
    assert Geometry.parse("nil") is Geometry.NIL
    assert Geometry.parse("SLR") is Geometry.SLR
    with pytest.raises(GeometryError):
        Geometry.parse("flat")


def test_report_deviation_not_clamped():
    r = [euclid_signed_ratio((0, 0), (0.5, 0), (1, 0))] * 3
    rep = make_report("E3", "menelaus", r)
    assert rep.product == pytest.approx(1.0)
    assert rep.deviation == pytest.approx(2.0)
