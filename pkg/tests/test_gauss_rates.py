"""Gaussian rates, bounds, GDoF expressions, and power-exponent plans."""

import math
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pimac import (
    AlphaVector,
    PowerExponents,
    Regime,
    classify_alpha,
    gaussian_entropy_diff_check,
    gdof_iacp,
    gdof_naive_tin,
    gdof_numeric,
    gdof_pacp,
    gdof_tdma_tin,
    gdof_tin_power_control_max,
    gdof_ub,
    iacp_preset,
    min_ub_g,
    naive_tin_rate_g,
    pacp_components,
    tdma_tin_rate_at,
    tdma_tin_rate_g,
    ub_g,
)
from pimac.gauss_rates import TimeShare

from conftest import random_admissible_alpha, sample_special_line_alpha

ANCHOR = AlphaVector(1, 0.25, 1, 0.25, 0.75, 0.25, rho=1e6)


def test_anchor_values():
    assert naive_tin_rate_g(ANCHOR) == pytest.approx(28.8749, abs=2e-3)
    res = tdma_tin_rate_g(ANCHOR)
    assert res.rate == pytest.approx(29.8076, abs=2e-3)
    # full time to the two-user interference slot
    assert res.share.tau2 == pytest.approx(1.0, abs=0.03)
    assert ub_g(ANCHOR, 1) == pytest.approx(30.8324, abs=2e-3)


def test_tdma_beats_naive_at_anchor():
    assert tdma_tin_rate_g(ANCHOR).rate > naive_tin_rate_g(ANCHOR)


def test_zero_share_slots_contribute_nothing():
    r_full = tdma_tin_rate_at(ANCHOR, TimeShare(0.0, 1.0, 0.0))
    r_tiny = tdma_tin_rate_at(ANCHOR, TimeShare(1e-9, 1.0 - 1e-9, 0.0))
    assert r_full == pytest.approx(r_tiny, abs=1e-3)


def test_time_share_validation():
    with pytest.raises(ValueError):
        TimeShare(0.5, 0.4, 0.2)
    with pytest.raises(ValueError):
        TimeShare(-0.1, 0.6, 0.5)


def test_conditional_gauss_bounds():
    # third bound needs a_d3 - a_d1 <= a_c3 - 2 a_c1
    a = AlphaVector(1.0, 0.1, 1.0, 0.2, 0.9, 0.5, rho=1e4)
    assert ub_g(a, 3) is not None
    assert ub_g(a, 4) is None
    assert min_ub_g(a) <= min(ub_g(a, 1), ub_g(a, 2))


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_achievable_below_min_ub(seed):
    rng = random.Random(seed)
    a = random_admissible_alpha(rng).with_rho(10 ** rng.uniform(1, 8))
    ub = min_ub_g(a)
    assert naive_tin_rate_g(a) <= ub + 1e-9
    assert tdma_tin_rate_g(a).rate <= ub + 1e-9


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_tdma_never_below_naive(seed):
    rng = random.Random(seed)
    a = random_admissible_alpha(rng).with_rho(10 ** rng.uniform(1, 6))
    assert tdma_tin_rate_g(a).rate >= naive_tin_rate_g(a) - 1e-9


def test_rx2_slot_term_minimized_near_closed_form():
    # with tau1=0 the Rx2-side sum is convex in tau2; scan the split point
    a = AlphaVector(1, 0.4, 1, 0.3, 0.8, 0.2, rho=1e4)
    rho = a.rho

    def rx2_term(tau2):
        share = TimeShare(0.0, tau2, 1.0 - tau2)
        t2 = tau2 * math.log2(
            1 + (rho ** a.alpha_d2) / (1 + rho ** a.alpha_c1 / tau2)
        ) if tau2 > 0 else 0.0
        t3 = (1 - tau2) * math.log2(
            1 + (rho ** a.alpha_d2) / (1 + rho ** a.alpha_c3 / (1 - tau2))
        ) if tau2 < 1 else 0.0
        return t2 + t3

    grid = np.linspace(1e-6, 1 - 1e-6, 4001)
    vals = [rx2_term(t) for t in grid]
    t_min = grid[int(np.argmin(vals))]
    t_pred = rho ** a.alpha_c1 / (rho ** a.alpha_c1 + rho ** a.alpha_c3)
    assert abs(t_min - t_pred) < 2e-3


def test_gdof_closed_forms():
    a = AlphaVector(1, 0.5, 0.875, 0.25, 1.125, 0.375)
    assert classify_alpha(a) is Regime.R3C
    assert gdof_tdma_tin(a) == pytest.approx(1.375, abs=1e-12)
    assert gdof_naive_tin(a) == pytest.approx(1.25, abs=1e-12)
    rep = gdof_iacp(a, iacp_preset(a))
    assert rep.d_total == pytest.approx(1.5, abs=1e-12)
    assert rep.d_a == pytest.approx(0.125, abs=1e-12)


def test_gdof_power_control_example():
    a = AlphaVector(1, 0.25, 1, 0.25, 0.75, 0.25)
    v = gdof_tin_power_control_max(a, grid_step=0.05)
    assert v == pytest.approx(1.5, abs=0.05)
    assert v <= gdof_tdma_tin(a) + 0.05


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_gdof_ub_dominates_schemes(seed):
    rng = random.Random(seed)
    a = random_admissible_alpha(rng)
    ub = min(gdof_ub(a, k) for k in (1, 2) )
    assert gdof_naive_tin(a) <= ub + 1e-9
    assert gdof_tdma_tin(a) <= ub + 1e-9


def test_secant_slopes_match_gdof():
    a = AlphaVector(1, 0.5, 0.875, 0.25, 1.125, 0.375)
    d_naive = gdof_numeric(naive_tin_rate_g, a, 1e8, 1e9)
    assert d_naive == pytest.approx(gdof_naive_tin(a), abs=0.05)
    d_tdma = gdof_numeric(lambda v: tdma_tin_rate_g(v).rate, a, 1e8, 1e9)
    assert d_tdma == pytest.approx(gdof_tdma_tin(a), abs=0.05)
    d_ub1 = gdof_numeric(lambda v: ub_g(v, 1), a, 1e8, 1e9)
    assert d_ub1 == pytest.approx(gdof_ub(a, 1), abs=0.05)


def test_power_exponents_validation():
    a = AlphaVector(1, 0.5, 0.875, 0.25, 1.125, 0.375)
    r = iacp_preset(a)
    r.validate(a)
    with pytest.raises(ValueError):
        PowerExponents(r_1a=0.5).validate(a)  # positive exponent
    # misaligned common blocks
    with pytest.raises(ValueError):
        PowerExponents(r_1a=0.0, r_3a=-0.5).validate(a)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_preset_never_below_tdma_in_regime_3(seed):
    rng = random.Random(seed)
    while True:
        a = random_admissible_alpha(rng)
        if classify_alpha(a).in_regime_3:
            break
    rep = gdof_iacp(a, iacp_preset(a))
    assert rep.d_total >= gdof_tdma_tin(a) - 1e-9


def test_pacp_on_special_line():
    rng = random.Random(5)
    a = sample_special_line_alpha(rng)
    base = gdof_tdma_tin(a)
    gain = 0.5 * min(a.alpha_c1, a.alpha_c3)
    assert gdof_pacp(a, math.pi / 2) == pytest.approx(base + gain, abs=1e-9)
    # aligned phases give no gain
    assert gdof_pacp(a, 0.0) == pytest.approx(base, abs=1e-9)
    comps = pacp_components(a, math.pi / 2)
    assert comps["d_1p_R"] == pytest.approx(0.5 * (a.alpha_d1 - a.alpha_c1), abs=1e-12)
    assert comps["d_a"] == pytest.approx(gain, abs=1e-12)


def test_pacp_rejected_off_special_line():
    with pytest.raises(ValueError):
        gdof_pacp(AlphaVector(1, 0.5, 0.875, 0.25, 1.125, 0.375), math.pi / 2)


def test_gaussian_entropy_diff_bounded():
    out = gaussian_entropy_diff_check(h1=2.0, h2=0.05, h3=2.0, P=100.0, n_samples=200)
    assert out["holds"]
    assert out["diff_per_symbol"] <= 1.0 + 1e-12
