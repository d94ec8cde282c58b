"""End-to-end acceptance checks.

Each test covers one headline guarantee and prints a single PASS/FAIL line
(visible with pytest -s or in failure output) with the checked quantity.
"""

import itertools
import math
import random
import time

import numpy as np
import pytest

from pimac import (
    AlphaVector,
    DetChannel,
    Regime,
    admissible,
    batch_round_trip,
    classify,
    classify_alpha,
    det_rate_report,
    gap_sweep,
    gdof_dominance_sweep,
    gdof_iacp,
    gdof_naive_tin,
    gdof_numeric,
    gdof_tdma_tin,
    gdof_ub,
    iacp_preset,
    iacp_rate,
    naive_tin_rate,
    naive_tin_rate_g,
    tdma_tin_rate_g,
    ub_g,
    verify_det_grid,
)

from conftest import random_admissible_alpha, sample_alpha_in, sample_special_line_alpha

GRID12 = None


def _grid12():
    global GRID12
    if GRID12 is None:
        GRID12 = verify_det_grid(12)
    return GRID12


def _report(name: str, ok: bool, detail: str) -> None:
    print(f"{name}: {'PASS' if ok else 'FAIL'} — {detail}")


def test_criterion_1_exhaustive_grid():
    rep = _grid12()
    ok = rep.ok
    _report(
        "criterion 1 (exhaustive grid <= 12)",
        ok,
        f"{rep.tuples_checked} tuples, {len(rep.violations)} violations, tolerance 0",
    )
    assert ok, rep.violations[:5]


def test_criterion_2_worked_example():
    rep = det_rate_report(DetChannel(8, 4, 7, 2, 9, 3))
    j = rep.to_json()
    got = (j["regime"], j["naive"], j["tdma"], j["iacp"], j["min_ub"])
    ok = got == ("3C", 10, 11, 12, 13) and j["naive"] < j["tdma"] < j["iacp"]
    _report(
        "criterion 2 (worked example 8,4,7,2,9,3)",
        ok,
        f"regime/naive/tdma/iacp/min_ub = {got}, strict ordering holds",
    )
    assert ok


def test_criterion_3_simulator_agreement():
    t0 = time.time()
    checked = 0
    for t in itertools.product(range(11), repeat=6):
        ch = DetChannel(*t)
        if not admissible(ch):
            continue
        label = classify(ch)
        d1, c1, d2, c2, d3, c3 = t
        jobs = [
            ("naive", None, naive_tin_rate(ch)),
            ("tdma", "p2p", d3),
            ("tdma", "ic12", max(0, d1 - c2) + max(0, d2 - c1)),
            ("tdma", "ic32", max(0, d3 - c2) + max(0, d2 - c3)),
        ]
        if label.in_regime_3 or label is Regime.SPECIAL_LINE:
            jobs.append(("iacp", None, iacp_rate(ch)))
        for scheme, slot, expect in jobs:
            ok, rate = batch_round_trip(scheme, ch, trials=100, seed=checked, slot=slot)
            assert ok, (t, scheme, slot)
            assert rate == expect, (t, scheme, slot, rate, expect)
            checked += 1
    dt = time.time() - t0
    ok = dt < 300
    _report(
        "criterion 3 (simulator agreement <= 10)",
        ok,
        f"{checked} scheme instances x 100 trials, zero errors, {dt:.0f}s (< 300s)",
    )
    assert ok


def test_criterion_4_power_control_dominance():
    rep = _grid12()
    entry = rep.summary["power control <= tdma"]
    ok = entry["violations"] == 0
    _report(
        "criterion 4 (power-control oracle <= tdma)",
        ok,
        f"{entry['checked']} tuples, {entry['violations']} violations, tolerance 0",
    )
    assert ok


def test_criterion_5_entropy_lemma():
    from pimac import lemma4_check

    rng = random.Random(1234)
    rng_np = np.random.default_rng(1234)
    worst = -math.inf
    for _ in range(1000):
        ell = rng.randint(1, 6)
        ell3 = rng.randint(1, ell)
        ell1 = rng.randint(0, ell3)
        ell2 = rng.randint(0, ell3 - ell1)
        size = 1 << ell
        p_a = rng_np.random(size)
        p_a /= p_a.sum()
        p_b = rng_np.random(size)
        p_b /= p_b.sum()
        out = lemma4_check((p_a, p_b), ell, ell1, ell2, ell3)
        worst = max(worst, out["diff"])
        assert out["holds"]
    ok = worst <= 1e-10
    _report(
        "criterion 5 (entropy-difference lemma)",
        ok,
        f"1000 random instances, max diff {worst:.3e} <= 1e-10",
    )
    assert ok


GAP_NAIVE_BOUND = 3 + 2 * math.log2(3)
GAP_TDMA_BOUND = {
    "1A": 4 + math.log2(3),
    "1B": 4 + math.log2(3),
    "2A": 4 + math.log2(3),
    "2B": 4 + math.log2(3),
    "1C": 7.0,
    "2C": 7.0,
    "2D": 2 + math.log2(3),
}


def test_criterion_6_gap_constants():
    rhos = [10.0 ** k for k in range(2, 9)]
    labels = [
        Regime.R1A, Regime.R1B, Regime.R1C,
        Regime.R2A, Regime.R2B, Regime.R2C, Regime.R2D,
    ]
    worst = {}
    for i, label in enumerate(labels):
        for a in sample_alpha_in(label, 20, seed=100 + i):
            for row in gap_sweep(a, rhos):
                assert row.regime == label.value
                assert row.within_bound, (a, row)
                assert row.gap_tdma <= GAP_TDMA_BOUND[label.value] + 1e-9
                if label.value in ("1A", "2A"):
                    assert row.gap_naive <= GAP_NAIVE_BOUND + 1e-9
                key = label.value
                worst[key] = max(worst.get(key, 0.0), row.gap_tdma)
    ok = all(worst[k] <= GAP_TDMA_BOUND[k] + 1e-9 for k in worst)
    _report(
        "criterion 6 (Gaussian gap constants)",
        ok,
        "20 samples x 7 sub-regimes x 7 SNRs; worst tdma gaps "
        + ", ".join(f"{k}={v:.2f}" for k, v in sorted(worst.items())),
    )
    assert ok


def test_criterion_7_tdma_strictly_beats_naive():
    rng = random.Random(77)
    strict_checked = 0
    min_edge = math.inf
    for _ in range(100):
        a = random_admissible_alpha(rng)
        if classify_alpha(a) in (Regime.SPECIAL_LINE, Regime.INADMISSIBLE):
            continue
        if abs((a.alpha_d3 - a.alpha_c3) - (a.alpha_d1 - a.alpha_c1)) < 1e-3:
            continue
        for rho in (1e2, 1e4, 1e6):
            b = a.with_rho(rho)
            edge = tdma_tin_rate_g(b).rate - naive_tin_rate_g(b)
            min_edge = min(min_edge, edge)
            assert edge > 0, (a, rho, edge)
            strict_checked += 1
    equal_ok = True
    for _ in range(20):
        a = sample_special_line_alpha(rng).with_rho(1e4)
        equal_ok &= tdma_tin_rate_g(a).rate >= naive_tin_rate_g(a) - 1e-9
    ok = min_edge > 0 and equal_ok
    _report(
        "criterion 7 (time sharing strictly beats naive off the matched line)",
        ok,
        f"{strict_checked} strict checks, min edge {min_edge:.3e}; on-line >= holds",
    )
    assert ok


def test_criterion_8_gdof_cross_checks():
    # numeric slopes against the closed forms
    rng = random.Random(808)
    max_err = 0.0
    for _ in range(10):
        a = random_admissible_alpha(rng, lo=0.05, hi=1.2)
        pairs = [
            (naive_tin_rate_g, gdof_naive_tin(a)),
            (lambda v: tdma_tin_rate_g(v).rate, gdof_tdma_tin(a)),
            (lambda v: ub_g(v, 1), gdof_ub(a, 1)),
            (lambda v: ub_g(v, 2), gdof_ub(a, 2)),
        ]
        for fn, expect in pairs:
            err = abs(gdof_numeric(fn, a, 1e8, 1e9) - expect)
            max_err = max(max_err, err)
            assert err <= 0.05, (a, expect, err)
    # preset margins over sampled regime-3 points and the matched line
    sweep = gdof_dominance_sweep(30000, seed=8)
    hits = sum(sweep["regime3_hits"].values())
    ok = (
        max_err <= 0.05
        and sweep["ok"]
        and hits >= 10000
        and sweep["special_line_samples"] >= 1000
        and sweep["min_margin"] > 0
    )
    _report(
        "criterion 8 (GDoF cross-checks)",
        ok,
        f"max secant error {max_err:.3f} <= 0.05; {hits} regime-3 samples, "
        f"min margin {sweep['min_margin']:.3e}; "
        f"{sweep['special_line_samples']} matched-line samples exact",
    )
    assert ok


def test_criterion_9_spot_values():
    a = AlphaVector(1, 0.25, 1, 0.25, 0.75, 0.25, rho=1e6)
    naive = naive_tin_rate_g(a)
    tdma = tdma_tin_rate_g(a).rate
    ub = ub_g(a, 1)
    ok = (
        naive == pytest.approx(28.88, abs=0.02)
        and tdma >= 29.81 - 0.02
        and ub == pytest.approx(30.83, abs=0.02)
    )
    _report(
        "criterion 9 (spot values)",
        ok,
        f"naive {naive:.4f} ~ 28.88, tdma {tdma:.4f} >= 29.81, ub1 {ub:.4f} ~ 30.83",
    )
    assert ok
