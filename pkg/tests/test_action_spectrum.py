import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from deficit.action import (
    INV_MU_STAR, MU_STAR, THETA3, GeometryConstants, action_gap, f_vector_from_K_mu, mu_for_action,
    normalized_action, regge_action_direct, regge_action_mu, tet_volume,
)
from deficit.errors import InvalidPair, NonPositiveMu, NotBracketable, TargetOutOfRange
from deficit.spectrum import (
    WalkupParams, action_range, bracket, gap_between, level, min_bracketing_K, n1_window,
    spectrum_levels,
)
from deficit.triangulation import boundary_4simplex

mpmath.mp.dps = 40
THETA_HP = mpmath.acos(mpmath.mpf(1) / 3)
MU_HP = 2 * mpmath.pi / THETA_HP


def rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


def test_constants():
    g = GeometryConstants()
    assert 5 < g.flat_degree < 5.2
    assert rel(THETA3, float(THETA_HP)) < 1e-15
    assert rel(MU_STAR, float(MU_HP)) < 1e-15
    assert g.tet_volume == 1 / (6 * math.sqrt(2))
    assert rel(g.triangle_area, math.sqrt(3) / 4) < 1e-15


def test_boundary_4simplex_action():
    val = regge_action_direct(boundary_4simplex())
    ref = 10 / (16 * mpmath.pi) * (2 * mpmath.pi - 3 * THETA_HP)
    assert rel(val.total, float(ref)) < 1e-14
    assert val.total == pytest.approx(0.51530, abs=5e-5)
    assert rel(val.per_volume * val.volume, val.total) < 1e-12
    assert rel(regge_action_mu(5, 3), val.total) < 1e-12
    assert rel(regge_action_direct(boundary_4simplex(), 2.0).total, 2 * val.total) < 1e-12


def test_mu_form_examples():
    assert regge_action_mu(7, MU_STAR) == pytest.approx(0, abs=1e-15)
    ref = 75 * (mpmath.mpf(1) / 6 - 1 / MU_HP)
    assert rel(regge_action_mu(100, 6), float(ref)) < 1e-13
    assert round(regge_action_mu(100, 6), 3) == -2.193
    with pytest.raises(NonPositiveMu):
        regge_action_mu(3, 0)
    with pytest.raises(NonPositiveMu):
        normalized_action(Fraction(-1, 2))


def test_direct_equals_mu_form(sample_triangulations):
    for T in sample_triangulations:
        fv = T.f_vector()
        direct = regge_action_direct(T).total
        mu_form = regge_action_mu(T.size, T.mean_edge_degree())
        assert rel(direct, mu_form) < 1e-12 or abs(direct - mu_form) < 1e-15


@given(st.integers(1, 10 ** 6), st.integers(1, 10 ** 6), st.sampled_from([0.5, 2.0, 10.0]))
def test_scaling(num, den, a):
    mu = Fraction(num, den)
    base = normalized_action(mu, 1.0)
    assert rel(normalized_action(mu, a), base / a ** 2) < 1e-12 or abs(base) < 1e-300


@given(st.fractions(min_value=Fraction(1, 100), max_value=100))
def test_sign_convention(mu):
    a = normalized_action(mu)
    if mu < MU_STAR:
        assert a > 0
    elif mu > MU_STAR:
        assert a < 0


def test_normalized_examples():
    assert abs(normalized_action(6) - (-0.186)) <= 0.005
    assert abs(normalized_action(Fraction(9, 2)) - 0.167) <= 0.005
    assert rel(normalized_action(3, 2.0), normalized_action(3) / 4) < 1e-12
    assert rel(mu_for_action(normalized_action(Fraction(17, 3))), 17 / 3) < 1e-12


def test_f_vector_from_K_mu():
    assert f_vector_from_K_mu(5, 3).as_tuple() == (5, 10, 10, 5)
    assert f_vector_from_K_mu(100, Fraction(600, 118)).as_tuple() == (18, 118, 200, 100)
    assert f_vector_from_K_mu(7, 6).as_tuple() == (0, 7, 14, 7)
    with pytest.raises(InvalidPair):
        f_vector_from_K_mu(5, Fraction(7, 2))
    with pytest.raises(InvalidPair):
        f_vector_from_K_mu(5, 0)


@given(st.integers(1, 500), st.integers(1, 3000))
def test_f_vector_round_trip(K, n1):
    mu = Fraction(6 * K, n1)
    fv = f_vector_from_K_mu(K, mu)
    assert fv.n1 == n1 and Fraction(6 * fv.n3, fv.n1) == mu
    assert fv.satisfies_closed_identities()


def test_gap():
    assert rel(action_gap(1), 3 * math.sqrt(2) / 4) < 1e-15
    assert round(action_gap(100), 7) == 0.0106066
    assert rel(action_gap(100), normalized_action(Fraction(600, 118)) - normalized_action(Fraction(600, 117))) < 1e-12
    for K in (1, 7, 100):
        for ell in (0.5, 1.0, 3.0):
            vol = tet_volume(ell) * K
            assert rel(action_gap(K, ell) * 8 * vol / ell, 1.0) < 1e-12


# ---------------------------------------------------------------------------
# spectrum


def test_windows():
    assert n1_window(5) == (10, 10)
    assert n1_window(100) == (116, 136)
    lo, hi = n1_window(10)
    assert (lo, hi) == (17, 16)
    assert spectrum_levels(10) == []


@given(st.integers(1, 10 ** 7), st.integers(-10, 50))
def test_window_matches_real_bounds(K, g):
    lo, hi = n1_window(K, g)
    lower = mpmath.mpf(K) + (3 + mpmath.sqrt(9 + 8 * K)) / 2
    assert lo - 1 < lower <= lo
    assert hi == (4 * K - g) // 3


def test_levels_k100():
    levels = spectrum_levels(100)
    assert len(levels) == 21
    assert float(levels[0].mu) == pytest.approx(600 / 116)
    assert float(levels[-1].mu) == pytest.approx(600 / 136)
    assert levels[-1].mu < MU_STAR < levels[0].mu
    acts = [lv.action_per_volume for lv in levels]
    assert acts == sorted(acts)
    for a, b in zip(acts, acts[1:]):
        assert rel(b - a, action_gap(100)) < 1e-9
    assert [lv.n1 for lv in spectrum_levels(5)] == [10]
    assert spectrum_levels(5)[0].mu == 3


def test_gap_between_is_constant():
    for K in (10, 100, 1000):
        lo, hi = n1_window(K)
        for n in range(max(lo, 1), hi):
            assert rel(gap_between(K, n), action_gap(K)) < 1e-9


def test_walkup_params():
    assert WalkupParams().gamma_star == -10
    assert "assumed" in WalkupParams().describe()
    with pytest.raises(ValueError):
        WalkupParams(-11)


def test_bracket_examples():
    b = bracket(0.0, 100)
    assert (b.lower.n1, b.upper.n1) == (117, 118)
    assert b.upper.action_per_volume == pytest.approx(0.00480, abs=1e-5)
    assert b.lower.action_per_volume == pytest.approx(-0.00580, abs=2e-5)
    with pytest.raises(NotBracketable):
        bracket(0.0, 5)
    a6, a45 = action_range()
    for x in (a6, a45, 1.0, -1.0):
        with pytest.raises(TargetOutOfRange):
            bracket(x, 100)


def test_bracket_touching_a_level():
    x = level(100, 120).action_per_volume
    b = bracket(x, 100)
    assert b.upper.n1 == 120 and b.lower.n1 == 119
    x = level(100, 116).action_per_volume
    b = bracket(x, 100)
    assert (b.lower.n1, b.upper.n1) == (116, 117)


@given(st.floats(-0.18, 0.16), st.integers(60, 5000))
def test_bracket_property(x, K):
    try:
        b = bracket(x, K)
    except NotBracketable:
        lo, hi = n1_window(K)
        inside = [n for n in range(lo, hi + 1)]
        assert len(inside) < 2 or not (level(K, lo).action_per_volume <= x <= level(K, hi).action_per_volume)
        return
    assert b.upper.n1 == b.lower.n1 + 1
    assert b.lower.action_per_volume <= x <= b.upper.action_per_volume
    assert rel(b.upper.action_per_volume - b.lower.action_per_volume, action_gap(K)) < 1e-9


def test_min_bracketing_K():
    k0 = min_bracketing_K(0.0)
    bracket(0.0, k0)
    for K in range(1, k0):
        with pytest.raises(NotBracketable):
            bracket(0.0, K)
    assert min_bracketing_K(-0.18) > k0
    with pytest.raises(TargetOutOfRange):
        min_bracketing_K(0.5)


def test_window_endpoints_converge():
    prev_lo = prev_hi = None
    for K in [10 ** k for k in range(2, 7)]:
        lo, hi = n1_window(K)
        mu_lo, mu_hi = 6 * K / hi, 6 * K / lo
        if prev_lo is not None:
            assert abs(mu_lo - 4.5) < abs(prev_lo - 4.5) + 1e-12
            assert abs(mu_hi - 6) < abs(prev_hi - 6)
        prev_lo, prev_hi = mu_lo, mu_hi
    assert abs(prev_lo - 4.5) < 1e-4 and abs(prev_hi - 6) < 1e-2
    assert INV_MU_STAR == pytest.approx(1 / MU_STAR)
