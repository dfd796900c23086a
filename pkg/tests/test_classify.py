import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from eightvertex.classify import (EXACTLY_TRACTABLE, FPRAS, NP_HARD, OPEN, PM_EQUIVALENT, ClassifyError,
                                  region_flags, verdict, verdict_label)

F = Fraction
nonneg = st.fractions(min_value=0, max_value=6, max_denominator=5)
positive_scale = st.fractions(min_value=F(1, 7), max_value=50, max_denominator=7)


def test_flag_examples():
    f = region_flags(1.1, 1.1, 1.1, 1)
    assert (f.in_DO, f.in_dSUM, f.in_SQSUM) == (True, True, True)
    f = region_flags(1, 1, 1, 2)
    assert (f.in_DO, f.in_dSUM, f.in_SQSUM) == (True, False, False)
    assert not region_flags(0, 0, 0, 1).in_DO


@pytest.mark.parametrize("params,expected", [
    ((1, 1, 1, 1), EXACTLY_TRACTABLE),
    ((1.1, 1.1, 1.1, 1), FPRAS),
    ((1, 1, 1.5, 1), PM_EQUIVALENT),
    ((1, 1, 1, 2), OPEN),
    ((1, 1, 1, 4), NP_HARD),
])
def test_worked_verdicts(params, expected):
    v = verdict(*params)
    assert v.verdict == expected
    if expected == OPEN:
        assert v.pm_hard_lower_bound


@pytest.mark.parametrize("params", [(0, 0, 0, 0), (0, 0, 0, 5), (0, 3, 0, 3), (2, 0, 0, 2), (1, 0, 0, 0)])
def test_special_tractable_cases(params):
    assert verdict_label(*params) == EXACTLY_TRACTABLE


def test_zero_parameter_rows():
    # a = b = 0, c > 0, d > 0 with c != d lies outside DO.
    assert verdict_label(0, 0, 2, 1) == NP_HARD
    # a = 0, b, c > 0, d = 0 outside d-SUM is outside DO as well.
    assert verdict_label(0, 1, 3, 0) == NP_HARD
    # a = 0, b, c, d > 0 outside d-SUM keeps the perfect-matching lower bound.
    v = verdict(0, 1, F(6, 5), 1)
    assert v.pm_hard_lower_bound and v.verdict == PM_EQUIVALENT


def test_exact_boundaries_are_inclusive():
    # a + d = b + c exactly counts as inside d-SUM.
    f = region_flags(F(3), F(2), F(2), F(1))
    assert f.in_dSUM and f.in_SQSUM and set(f.boundary) == {"d-SUM:a", "SQ-SUM:a"}
    f = region_flags(F(2), F(2), F(2), F(2))
    assert f.in_dSUM and "d-SUM:a" in f.boundary


def test_negative_input_rejected():
    with pytest.raises(ClassifyError):
        verdict(1, -1, 1, 1)


@given(nonneg, nonneg, nonneg, nonneg)
def test_subset_invariants(a, b, c, d):
    f = region_flags(a, b, c, d)
    assert not f.in_dSUM or f.in_DO
    assert not f.in_SQSUM or f.in_DO


@given(nonneg, nonneg, nonneg, nonneg, positive_scale)
def test_permutation_and_scaling_invariance(a, b, c, d, lam):
    base = verdict_label(a, b, c, d)
    for perm in itertools.permutations((a, b, c)):
        assert verdict_label(*perm, d) == base
    assert verdict_label(lam * a, lam * b, lam * c, lam * d) == base


def test_json_shape_and_planar_note():
    out = verdict(1, 1, 1.5, 1).to_json()
    assert set(out) >= {"flags", "verdict", "citations", "planar_note"}
    assert "planar" in out["planar_note"]
    assert "FKT" in verdict(3, 4, 5, 0).planar_note
