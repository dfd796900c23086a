import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from eightvertex.geometry import (RegionError, decompose_minkowski, in_closure, random_closure_point,
                                  region_slacks, w_slacks)

F = Fraction
coords = st.fractions(min_value=0, max_value=4, max_denominator=12)


def check_pair(u, res):
    v, w = res.v, res.w
    assert sum(v) == 1 and min(v) >= 0
    assert min(w) >= 0 and min(w_slacks(w)) >= 0
    assert tuple(x + y for x, y in zip(v, w)) == tuple(u)


def test_symmetric_point():
    res = decompose_minkowski((F(1), F(1), F(1)))
    assert res.v == (F(1, 3),) * 3 and res.w == (F(2, 3),) * 3


def test_tetrahedron_branch():
    res = decompose_minkowski((F(1, 2), F(2, 5), F(3, 10)))
    assert res.branch == "diagonal"
    assert res.w == (F(1, 15),) * 3
    assert res.v == (F(13, 30), F(10, 30), F(7, 30))


def test_polygon_branch_interval():
    u = (F(2), F(3, 5), F(3, 5))
    res = decompose_minkowski(u)
    check_pair(u, res)
    v1, v2, v3 = res.v
    assert F(9, 10) < v1 < 1 and v2 == v3 == (1 - v1) / 2
    assert res.margin > 0


def test_outside_region_rejected():
    with pytest.raises(RegionError, match="not in Minkowski region"):
        decompose_minkowski((F(3), F(1, 2), F(1, 2)))
    with pytest.raises(RegionError):
        decompose_minkowski((F(1, 5), F(1, 5), F(1, 5)))


@given(coords, coords, coords)
def test_decomposition_property(x, y, z):
    u = (x, y, z)
    if not in_closure(u):
        with pytest.raises(RegionError):
            decompose_minkowski(u)
        return
    res = decompose_minkowski(u)
    check_pair(u, res)
    if min(region_slacks(u)) > 0:
        assert res.margin > 0


@given(st.floats(0.01, 3.9), st.floats(0.01, 3.9), st.floats(0.01, 3.9))
def test_float_decomposition_within_rounding(x, y, z):
    u = (x, y, z)
    if min(region_slacks(u)) <= 1e-9:
        return
    res = decompose_minkowski(u)
    assert abs(sum(res.v) - 1) <= 1e-12
    assert all(abs(a + b - c) <= 1e-12 * max(1, c) for a, b, c in zip(res.v, res.w, u))
    assert res.margin > -1e-12


def test_random_closure_points_are_valid():
    rng = random.Random(0)
    for _ in range(200):
        u = random_closure_point(rng, interior_only=True)
        assert decompose_minkowski(u).margin > 0
