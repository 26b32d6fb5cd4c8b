import pytest
from hypothesis import given, settings, strategies as st

from doubletangle.analysis import (
    AnalysisError, cable_bounds, cable_hfk_dim, cable_segment_counts, cable_summary, floer_dim,
    khovanov_cable_lower_bound, parse_descriptor,
)
from doubletangle.ingest import BUILTINS, builtin_knot
from doubletangle.segments import decompose, tau_of
from randomized import random_knot


def test_floer_dim_examples():
    assert floer_dim("HF", "r[7]", "s[2]") == 4
    assert floer_dim("HF", "r[7]", "r[4]") == 6
    assert floer_dim("Kh", "r[3]", "r[3]") == 4
    assert floer_dim("HF", "r[3]", "r[3]") == 2
    assert floer_dim("HF", "sbar[4]", "r[1]") == 8
    assert floer_dim("Kh", "r[1]", "s[6]") == 12


def test_unsupported_pairings():
    with pytest.raises(AnalysisError):
        floer_dim("Kh", "r[1]", "sbar[2]")
    with pytest.raises(AnalysisError):
        floer_dim("HF", "s[2]", "sbar[2]")
    with pytest.raises(AnalysisError):
        floer_dim("HFK", "r[1]", "r[2]")
    with pytest.raises(AnalysisError):
        parse_descriptor("s[3]")
    with pytest.raises(AnalysisError):
        parse_descriptor("x7")


def test_cable_examples():
    assert cable_hfk_dim(decompose(builtin_knot("trefoil")), 3) == 7
    assert cable_hfk_dim(decompose(builtin_knot("unknot")), 0) == 1
    assert cable_hfk_dim(decompose(builtin_knot("torus_3_4")), 5) == 13


def test_cable_bound_examples():
    assert cable_bounds(3, 1, 1, 3) == (5, 7)
    assert cable_bounds(1, 1, 0, 0) == (1, 1)
    assert cable_bounds(5, 2, 3, 5) == (9, 17)
    with pytest.raises(AnalysisError):
        cable_bounds(0, 1, 0, 0)


def test_khovanov_bound_examples():
    assert khovanov_cable_lower_bound(3, 1, 1) == 17
    assert khovanov_cable_lower_bound(1, 0, 0) == 1
    assert khovanov_cable_lower_bound(5, 3, 0) == 53


def test_segment_counts_examples():
    tre = cable_segment_counts(decompose(builtin_knot("trefoil")), 3)
    assert tre["per_segment"] == [("d[2]", 3), ("u[1]", 2), ("v[1]", 2)]
    assert tre["total"] == 7
    assert cable_segment_counts(decompose(builtin_knot("unknot")), 0)["total"] == 1
    assert cable_segment_counts(decompose(builtin_knot("torus_3_4")), 5)["total"] == 13


@pytest.mark.parametrize("name", sorted(BUILTINS))
@pytest.mark.parametrize("t", range(-5, 6))
def test_routes_agree_on_builtins(name, t):
    dec = decompose(builtin_knot(name))
    s = cable_summary(dec, t)
    assert s["dim"] == s["segment_counts"]["total"]
    assert s["dim"] % 2 == 1
    assert s["lower"] <= s["dim"] <= s["upper"]


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(-10, 10))
def test_routes_agree_on_random_knots(seed, t):
    _, dec = random_knot(seed, graded=False)
    s = cable_summary(dec, t)
    assert s["dim"] % 2 == 1
    assert s["lower"] <= s["dim"] <= s["upper"]
    assert s["dim"] == 4 * sum(dec.torsion_orders()) + abs(2 * t + 1 - 4 * tau_of(dec))
