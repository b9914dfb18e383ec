from __future__ import annotations

import numpy as np
import pytest

from thurston_tri.constcurv import CCKind, cc_ceva, cc_menelaus, cc_simple_ratio, cc_verify_ceva_menelaus, distance
from thurston_tri.core import GeometryError, ZeroDenominator


def test_simple_ratio_examples():
    assert cc_simple_ratio("Euclidean", 0.4, 0.4, True).value == 1.0
    assert cc_simple_ratio("Spherical", np.pi / 6, np.pi / 3, True).value == pytest.approx(1 / np.sqrt(3))
    r = cc_simple_ratio("Hyperbolic", 1.5, 0.5, False)
    assert r.value == pytest.approx(-np.sinh(1.5) / np.sinh(0.5))
    with pytest.raises(ZeroDenominator):
        cc_simple_ratio("Euclidean", 0.3, 0.0, True)
    with pytest.raises(GeometryError):
        cc_simple_ratio("Spherical", 4.0, 0.1, True)


def test_euclidean_centroid():
    A, B, C = np.array([0, 0, 1.0]), np.array([1, 0, 1.0]), np.array([0.3, 0.8, 1.0])
    rep = cc_ceva("Euclidean", A, B, C, (1 / 3, 1 / 3, 1 / 3))
    for r in rep.ratios:
        assert r.value == pytest.approx(1.0, abs=1e-12)
    assert rep.product == pytest.approx(1.0, abs=1e-12)


def test_spherical_equilateral_median():
    z = np.cos(0.6)
    verts = [np.array([np.sin(0.6) * np.cos(a), np.sin(0.6) * np.sin(a), z]) for a in (0, 2 * np.pi / 3, 4 * np.pi / 3)]
    rep = cc_ceva("Spherical", *verts, (1, 1, 1))
    vals = [r.value for r in rep.ratios]
    assert np.ptp(vals) < 1e-12
    assert rep.product == pytest.approx(1.0, abs=1e-12)


def test_hyperbolic_distance_matches_arccosh():
    def lift(x, y):
        return np.array([x, y, np.sqrt(1 + x * x + y * y)])

    a, b = lift(0.3, -0.2), lift(-0.5, 0.9)
    inner = a[0] * b[0] + a[1] * b[1] - a[2] * b[2]
    assert distance(CCKind.HYPERBOLIC, a, b) == pytest.approx(np.arccosh(-inner), rel=1e-12)


def test_menelaus_midline_parity():
    A, B, C = np.array([0, 0, 1.0]), np.array([2, 0, 1.0]), np.array([0, 2, 1.0])
    mid_ab, quarter_ac = (A + B) / 2, (3 * A + C) / 4
    rep = cc_menelaus("Euclidean", A, B, C, np.cross(mid_ab, quarter_ac))
    assert sum(not r.between for r in rep.ratios) == 1
    assert rep.product == pytest.approx(-1.0, abs=1e-12)


@pytest.mark.parametrize("kind", list(CCKind))
def test_random_products(kind):
    stats = {}
    reps = cc_verify_ceva_menelaus(kind, seed=3, trials=300, stats=stats)
    assert len(reps) == 600
    assert max(r.deviation for r in reps) < 1e-9
    assert stats["resampled"] >= 0


def test_spherical_arcs_stay_below_semicircle():
    reps = cc_verify_ceva_menelaus("spherical", seed=11, trials=200)
    for rep in reps:
        V = np.array(rep.trace["vertices"])
        for i, j in ((0, 1), (1, 2), (2, 0)):
            assert distance(CCKind.SPHERICAL, V[i], V[j]) < np.pi


def test_trials_must_be_positive():
    with pytest.raises(GeometryError):
        cc_verify_ceva_menelaus("h2", trials=0)
