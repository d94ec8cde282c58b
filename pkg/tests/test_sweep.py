"""Grid verification engine, gap sweeps, regime maps, and dominance sampling."""

import math
import random

import pytest

from pimac import (
    AlphaVector,
    gap_sweep,
    gdof_dominance_sweep,
    regime_map,
    regime_map_csv,
    verify_det_grid,
)

from conftest import sample_special_line_alpha


def test_grid_clean_at_8():
    rep = verify_det_grid(8)
    assert rep.ok, rep.violations[:5]
    assert rep.tuples_checked == 66825
    assert all(v["violations"] == 0 for v in rep.summary.values())
    assert rep.summary["simulator round trips"]["checked"] > 0


def test_grid_mutation_is_caught():
    rep = verify_det_grid(7, mutate="tdma3_plus1")
    assert not rep.ok
    assert any(v["violations"] > 0 for v in rep.summary.values())


def test_grid_cap():
    with pytest.raises(ValueError):
        verify_det_grid(15)


def test_grid_report_json():
    rep = verify_det_grid(5)
    j = rep.to_json()
    assert j["ok"] is True
    assert j["tuples_checked"] == rep.tuples_checked


def test_gap_sweep_anchor():
    a = AlphaVector(1, 0.25, 1, 0.25, 0.75, 0.25)
    rows = gap_sweep(a, [10.0 ** k for k in range(2, 9)])
    assert len(rows) == 7
    for row in rows:
        assert row.regime == "1A"
        assert row.within_bound
        assert row.gap_naive <= 3 + 2 * math.log2(3) + 1e-9
        assert row.gap_tdma <= 4 + math.log2(3) + 1e-9
        assert row.gap_naive >= -1e-9 and row.gap_tdma >= -1e-9
    near = next(r for r in rows if r.rho == 1e6)
    assert near.gap_naive == pytest.approx(30.8324 - 28.8749, abs=0.02)


def test_gap_sweep_row_json():
    a = AlphaVector(1, 0.25, 1, 0.25, 0.75, 0.25)
    (row,) = gap_sweep(a, [1e4])
    j = row.to_json()
    assert j["rho"] == 1e4
    assert j["within_bound"] is True


def test_regime_map_det():
    rows = regime_map((8, 4, 7, 2), list(range(0, 13)), list(range(0, 13)))
    assert len(rows) == 169
    lookup = {(r["d3"], r["c3"]): r for r in rows}
    assert lookup[(9, 3)]["regime"] == "3C"
    assert lookup[(9, 3)]["iacp"] == 12
    text = regime_map_csv(rows)
    lines = text.split("\n")
    assert lines[0].startswith("d3,c3,regime")
    assert text == regime_map_csv(rows)  # deterministic rendering


def test_regime_map_alpha():
    rows = regime_map(
        (1.0, 0.25, 1.0, 0.25),
        [0.5, 0.75, 1.0],
        [0.1, 0.25],
    )
    assert len(rows) == 6
    assert all("gdof_tdma" in r for r in rows)


def test_gdof_dominance_sweep_small():
    out = gdof_dominance_sweep(300, seed=3)
    assert out["ok"], out
    assert sum(out["regime3_hits"].values()) > 0
    assert out["special_line_samples"] >= 30
    assert out["min_margin"] > 0
    assert out["violations"] == []


def test_special_line_sampler_lands_on_line():
    rng = random.Random(0)
    for _ in range(10):
        a = sample_special_line_alpha(rng)
        assert abs((a.alpha_d3 - a.alpha_c3) - (a.alpha_d1 - a.alpha_c1)) < 1e-12
