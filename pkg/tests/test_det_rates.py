"""Deterministic rate formulas, bounds, capacity rows, and the alignment plan."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from pimac import (
    DetChannel,
    InadmissibleChannel,
    Regime,
    capacity,
    capacity_with_source,
    classify,
    det_rate_report,
    iacp_plan,
    iacp_rate,
    min_upper_bound,
    naive_tin_rate,
    power_control_tin_max,
    tdma_tin_detail,
    tdma_tin_rate,
    ub1,
    ub2,
    ub3,
    ub4,
    ub_special,
)

from conftest import random_admissible_det


@pytest.mark.parametrize(
    "tup,value",
    [((8, 2, 8, 2, 5, 1), 12), ((8, 4, 7, 2, 9, 3), 10), ((4, 1, 6, 1, 9, 2), 12)],
)
def test_naive_values(tup, value):
    assert naive_tin_rate(DetChannel(*tup)) == value


@pytest.mark.parametrize(
    "tup,value,slot",
    [
        ((8, 4, 7, 2, 9, 3), 11, "ic32"),
        ((3, 1, 4, 1, 10, 4), 10, "p2p"),
        ((8, 2, 8, 2, 5, 1), 12, "ic12"),
    ],
)
def test_tdma_values(tup, value, slot):
    d = tdma_tin_detail(DetChannel(*tup))
    assert d.rate == value
    assert d.slot == slot
    assert tdma_tin_rate(DetChannel(*tup)) == value


def test_power_control_values():
    assert power_control_tin_max(DetChannel(8, 2, 8, 2, 5, 1)) == 12
    assert power_control_tin_max(DetChannel(8, 4, 7, 2, 9, 3)) == 11
    assert power_control_tin_max(DetChannel(0, 0, 0, 0, 0, 0)) == 0


def test_power_control_cap_rejected():
    with pytest.raises(ValueError):
        power_control_tin_max(DetChannel(21, 0, 21, 0, 1, 0))


def test_upper_bound_values():
    assert ub1(DetChannel(8, 2, 8, 2, 5, 1)) == 12
    assert ub2(DetChannel(4, 1, 6, 1, 9, 2)) == 12
    assert ub3(DetChannel(10, 3, 10, 3, 9, 6)) == 14
    assert ub_special(DetChannel(6, 2, 6, 2, 8, 4)) == 8


def test_conditional_bounds_inapplicable():
    ch = DetChannel(8, 4, 7, 2, 9, 3)
    assert ub3(ch) is None  # 9-3 > 8-8
    assert ub4(ch) is None  # 9-6 < 8-4
    assert ub_special(ch) is None
    assert min_upper_bound(ch) == 13


def test_capacity_rows():
    assert capacity(DetChannel(8, 2, 8, 2, 5, 1)) == 12
    v, src = capacity_with_source(DetChannel(8, 2, 8, 2, 5, 1))
    assert (v, src) == (12, "regime1")
    v, src = capacity_with_source(DetChannel(3, 1, 4, 1, 10, 4))
    assert (v, src) == (10, "2D")
    v, src = capacity_with_source(DetChannel(8, 4, 7, 2, 9, 3))
    assert v is None and "unknown" in src
    v, src = capacity_with_source(DetChannel(6, 2, 6, 2, 8, 4))
    assert (v, src) == (8, "special-line")


def test_inadmissible_rejected():
    bad = DetChannel(8, 4, 7, 4, 9, 3)
    for fn in (naive_tin_rate, tdma_tin_rate, capacity, min_upper_bound):
        with pytest.raises(InadmissibleChannel):
            fn(bad)


def test_worked_example_plan():
    plan = iacp_plan(DetChannel(8, 4, 7, 2, 9, 3))
    assert (plan.R_3c, plan.R_a, plan.ell_1, plan.ell_3) == (0, 1, 1, 0)
    assert plan.R_1p_plus_R_3p == 6
    assert plan.R_2p_total == 4
    assert plan.sum_rate == 12


def test_plan_special_line_no_alignment():
    plan = iacp_plan(DetChannel(6, 2, 6, 2, 8, 4))
    assert plan.mu == plan.nu
    assert plan.R_a == 0


def test_iacp_values():
    assert iacp_rate(DetChannel(8, 4, 7, 2, 9, 3)) == 12
    assert iacp_rate(DetChannel(6, 2, 6, 2, 5, 5)) == 9
    assert iacp_rate(DetChannel(5, 2, 4, 1, 9, 5)) == 10
    assert iacp_plan(DetChannel(6, 2, 6, 2, 5, 5)).R_3c == 1


def test_iacp_rejected_outside_regime3():
    with pytest.raises(ValueError):
        iacp_rate(DetChannel(8, 2, 8, 2, 5, 1))


def test_report_fields():
    rep = det_rate_report(DetChannel(8, 4, 7, 2, 9, 3))
    j = rep.to_json()
    assert j["naive"] == 10 and j["tdma"] == 11 and j["iacp"] == 12
    assert j["min_ub"] == 13 and j["capacity"] is None
    row = rep.csv_row().split(",")
    assert len(row) == len(rep.CSV_HEADER.split(","))


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_rate_order_and_soundness(seed):
    rng = random.Random(seed)
    ch = random_admissible_det(rng, max_n=12)
    label = classify(ch)
    ub = min_upper_bound(ch)
    assert 0 <= naive_tin_rate(ch) <= tdma_tin_rate(ch) <= ub
    cap = capacity(ch)
    if label.macro in ("regime1", "regime2"):
        assert cap == tdma_tin_rate(ch) == ub
    if label.in_regime_3 or label is Regime.SPECIAL_LINE:
        plan = iacp_plan(ch)
        rate = iacp_rate(ch)
        assert plan.sum_rate == rate
        assert tdma_tin_rate(ch) <= rate <= ub
        assert plan.R_a >= 0 and plan.R_3c >= 0
        assert plan.R_1p >= 0 and plan.R_3p >= 0
        assert plan.R_2p1 >= 0 and plan.R_2p2 >= 0
        # the two aligned blocks occupy the same level span at Rx2
        assert ch.n_c1 - plan.ell_1 == ch.n_c3 - plan.R_3c - plan.ell_3


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_power_control_dominance(seed):
    rng = random.Random(seed)
    ch = random_admissible_det(rng, max_n=8)
    pc = power_control_tin_max(ch)
    assert naive_tin_rate(ch) <= pc <= tdma_tin_rate(ch)
