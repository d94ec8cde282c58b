"""Gaussian-model rate formulas, upper bounds, and GDoF calculators.

Rates are in bits per channel use as functions of the exponent vector alpha
and the reference SNR rho (link SNR of link k is rho^alpha_k).  GDoF values
are high-SNR pre-logs of the same expressions.

Covers: naive TIN, the three-slot time-sharing scheme with its simplex
optimizer, the four genie-aided upper bounds, TIN with power control (grid
oracle), the alignment scheme's GDoF with per-stream power exponents and the
per-sub-regime preset allocations, and the phase-alignment scheme that adds
(1/2) min(alpha_c1, alpha_c3) on the special line.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

import numpy as np

from .channel import AlphaVector, Regime, classify_alpha

__all__ = [
    "RHO_CAP",
    "TimeShare",
    "TdmaGaussResult",
    "PowerExponents",
    "GdofReport",
    "naive_tin_rate_g",
    "tdma_tin_rate_at",
    "tdma_tin_rate_g",
    "ub_g",
    "min_ub_g",
    "gdof_naive_tin",
    "gdof_tdma_tin",
    "gdof_ub",
    "gdof_tin_power_control_max",
    "gdof_iacp",
    "iacp_preset",
    "gdof_pacp",
    "pacp_components",
    "gdof_numeric",
    "gaussian_entropy_diff_check",
]

RHO_CAP = 1e12
NEG_INF = float("-inf")


def _log2_1p(x: float) -> float:
    return math.log1p(x) / math.log(2)


def _powers(a: AlphaVector) -> tuple[float, ...]:
    if a.rho > RHO_CAP:
        raise ValueError(f"rho {a.rho:g} above supported cap {RHO_CAP:g}")
    return tuple(a.rho ** v for v in a.as_tuple())


def _pos(x: float) -> float:
    return x if x > 0 else 0.0


def naive_tin_rate_g(a: AlphaVector) -> float:
    """All transmitters at full power, receivers treat interference as noise."""
    pd1, pc1, pd2, pc2, pd3, pc3 = _powers(a)
    return _log2_1p((pd1 + pd3) / (1 + pc2)) + _log2_1p(pd2 / (1 + pc1 + pc3))


@dataclass(frozen=True)
class TimeShare:
    tau1: float
    tau2: float
    tau3: float

    def __post_init__(self) -> None:
        for v in (self.tau1, self.tau2, self.tau3):
            if not -1e-12 <= v <= 1 + 1e-12:
                raise ValueError(f"time fractions must lie in [0, 1], got {v}")
        if abs(self.tau1 + self.tau2 + self.tau3 - 1.0) > 1e-12:
            raise ValueError(
                f"time fractions must sum to 1, got {self.tau1 + self.tau2 + self.tau3}"
            )

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.tau1, self.tau2, self.tau3)


def tdma_tin_rate_at(a: AlphaVector, t: TimeShare) -> float:
    """Rate of the three-slot scheme at a fixed time share.

    Tx3 alone for tau1, Tx1+Tx2 for tau2, Tx3+Tx2 for tau3; each transmitter
    boosts power by the reciprocal of its active fraction.  A zero-fraction
    slot contributes zero and its boost is skipped (continuity limit).
    """
    pd1, pc1, pd2, pc2, pd3, pc3 = _powers(a)
    t1, t2, t3 = t.as_tuple()
    rate = 0.0
    if t1 > 0:
        rate += t1 * _log2_1p(pd3 / (t1 + t3))
    if t2 > 0:
        rate += t2 * (
            _log2_1p((pd1 / t2) / (1 + pc2 / (1 - t1)))
            + _log2_1p((pd2 / (1 - t1)) / (1 + pc1 / t2))
        )
    if t3 > 0:
        rate += t3 * (
            _log2_1p((pd3 / (t1 + t3)) / (1 + pc2 / (1 - t1)))
            + _log2_1p((pd2 / (1 - t1)) / (1 + pc3 / (t1 + t3)))
        )
    return rate


def _tdma_rates_vec(a: AlphaVector, t1: np.ndarray, t2: np.ndarray) -> np.ndarray:
    pd1, pc1, pd2, pc2, pd3, pc3 = _powers(a)
    t3 = 1.0 - t1 - t2
    log2 = np.log2
    m1 = t1 > 0
    m2 = t2 > 0
    m3 = t3 > 0
    s13 = np.where(m1 | m3, t1 + t3, 1.0)
    r1 = np.where(m1, t1 * log2(1 + pd3 / s13), 0.0)
    one_m_t1 = np.where(m2 | m3, 1.0 - t1, 1.0)
    t2s = np.where(m2, t2, 1.0)
    r2 = np.where(
        m2,
        t2
        * (
            log2(1 + (pd1 / t2s) / (1 + pc2 / one_m_t1))
            + log2(1 + (pd2 / one_m_t1) / (1 + pc1 / t2s))
        ),
        0.0,
    )
    r3 = np.where(
        m3,
        t3
        * (
            log2(1 + (pd3 / s13) / (1 + pc2 / one_m_t1))
            + log2(1 + (pd2 / one_m_t1) / (1 + pc3 / s13))
        ),
        0.0,
    )
    return r1 + r2 + r3


@dataclass(frozen=True)
class TdmaGaussResult:
    rate: float
    share: TimeShare


def tdma_tin_rate_g(a: AlphaVector) -> TdmaGaussResult:
    """Best time share: 0.02 simplex grid, two refinement rounds, plus the
    three corners and the closed-form interior candidate (0, tau*, 1 - tau*)
    with tau* = rho^ad1 / (rho^ad1 + rho^ad3)."""
    pd1 = a.rho ** a.alpha_d1
    pd3 = a.rho ** a.alpha_d3

    def grid_around(c1: float, c2: float, step: float, span: float) -> tuple[np.ndarray, np.ndarray]:
        v1 = np.arange(max(0.0, c1 - span), min(1.0, c1 + span) + step / 2, step)
        v2 = np.arange(max(0.0, c2 - span), min(1.0, c2 + span) + step / 2, step)
        g1, g2 = np.meshgrid(v1, v2, indexing="ij")
        keep = g1 + g2 <= 1.0 + 1e-12
        return g1[keep], g2[keep]

    step = 0.02
    t1, t2 = grid_around(0.5, 0.5, step, 0.5)
    tau_star = pd1 / (pd1 + pd3)
    extra1 = np.array([1.0, 0.0, 0.0, 0.0])
    extra2 = np.array([0.0, 1.0, 0.0, tau_star])
    t1 = np.concatenate([t1, extra1])
    t2 = np.concatenate([t2, extra2])
    vals = _tdma_rates_vec(a, t1, t2)
    best = int(np.argmax(vals))
    b1, b2, bv = float(t1[best]), float(t2[best]), float(vals[best])
    for _ in range(2):
        step /= 10
        g1, g2 = grid_around(b1, b2, step, step * 10)
        vals = _tdma_rates_vec(a, g1, g2)
        i = int(np.argmax(vals))
        if vals[i] > bv:
            b1, b2, bv = float(g1[i]), float(g2[i]), float(vals[i])
    b3 = max(0.0, 1.0 - b1 - b2)
    # Renormalize away grid round-off before constructing the share.
    s = b1 + b2 + b3
    share = TimeShare(b1 / s, b2 / s, b3 / s)
    return TdmaGaussResult(rate=bv, share=share)


def ub_g(a: AlphaVector, which: int) -> float | None:
    """Genie-aided sum-rate upper bounds 1-4; 3 and 4 are conditional."""
    pd1, pc1, pd2, pc2, pd3, pc3 = _powers(a)
    ad1, ac1, ad2, ac2, ad3, ac3 = a.as_tuple()
    if which == 1:
        return _log2_1p(pc2 + pd3 + pd1 / (1 + pc1)) + _log2_1p(pc1 + pd2 / (1 + pc2))
    if which == 2:
        return _log2_1p(pc2 + pd1 + pd3 / (1 + pc3)) + _log2_1p(pc3 + pd2 / (1 + pc2))
    if which == 3:
        if ad3 - ad1 > ac3 - 2 * ac1:
            return None
        s = pd1 + pd3
        return (
            _log2_1p(pc2 + s / (1 + a.rho ** (ac1 - ad1) * s))
            + _log2_1p(pc3 + pc1 + pd2 / (1 + pc2))
            + 1.0
        )
    if which == 4:
        if ad1 - ad3 > ac1 - 2 * ac3:
            return None
        s = pd1 + pd3
        return (
            _log2_1p(pc2 + s / (1 + a.rho ** (ac3 - ad3) * s))
            + _log2_1p(pc3 + pc1 + pd2 / (1 + pc2))
            + 1.0
        )
    raise ValueError(f"which must be 1..4, got {which}")


def min_ub_g(a: AlphaVector) -> float:
    return min(v for v in (ub_g(a, k) for k in (1, 2, 3, 4)) if v is not None)


def gdof_naive_tin(a: AlphaVector) -> float:
    """High-SNR pre-log of the naive-TIN rate (derived from its formula)."""
    ad1, ac1, ad2, ac2, ad3, ac3 = a.as_tuple()
    return _pos(max(ad1, ad3) - ac2) + _pos(ad2 - max(ac1, ac3))


def gdof_tdma_tin(a: AlphaVector) -> float:
    ad1, ac1, ad2, ac2, ad3, ac3 = a.as_tuple()
    return max(ad3, ad1 - ac2 + ad2 - ac1, _pos(ad3 - ac2) + _pos(ad2 - ac3))


def gdof_ub(a: AlphaVector, which: int) -> float | None:
    """High-SNR pre-logs of the four upper bounds (same applicability gates)."""
    ad1, ac1, ad2, ac2, ad3, ac3 = a.as_tuple()
    if which == 1:
        return max(ac2, ad3, ad1 - ac1) + max(ac1, ad2 - ac2)
    if which == 2:
        return max(ac2, ad1, ad3 - ac3) + max(ac3, ad2 - ac2)
    if which in (3, 4):
        if which == 3 and ad3 - ad1 > ac3 - 2 * ac1:
            return None
        if which == 4 and ad1 - ad3 > ac1 - 2 * ac3:
            return None
        m = max(ad1, ad3)
        drop = ac1 - ad1 if which == 3 else ac3 - ad3
        first = max(ac2, m - max(0.0, drop + m))
        return first + max(ac3, ac1, ad2 - ac2)
    raise ValueError(f"which must be 1..4, got {which}")


def gdof_tin_power_control_max(a: AlphaVector, grid_step: float = 0.05) -> float:
    """Best TIN GDoF over per-transmitter power-exponent cutbacks, by grid.

    Free exponents: a11 in [0, ad1], a22 in [0, ad2], and the third
    transmitter's desired (or, when its cross link dominates, cross) level;
    the exponents reaching the other receiver follow from the link gaps.
    """
    if grid_step <= 0:
        raise ValueError("grid_step must be > 0")
    ad1, ac1, ad2, ac2, ad3, ac3 = a.as_tuple()

    def axis(hi: float) -> np.ndarray:
        n = max(1, int(math.ceil(hi / grid_step)))
        return np.linspace(0.0, hi, n + 1)

    a11 = axis(ad1)[:, None, None]
    a22 = axis(ad2)[None, :, None]
    if ac3 <= ad3:
        a13 = axis(ad3)[None, None, :]
        a23 = np.maximum(a13 - (ad3 - ac3), 0.0)
    else:
        a23 = axis(ac3)[None, None, :]
        a13 = np.maximum(a23 - (ac3 - ad3), 0.0)
    a21 = np.maximum(a11 - (ad1 - ac1), 0.0)
    a12 = np.maximum(a22 - (ad2 - ac2), 0.0)
    rate = np.maximum(np.maximum(a11, a13) - a12, 0.0) + np.maximum(
        a22 - np.maximum(a21, a23), 0.0
    )
    return float(rate.max())


@dataclass(frozen=True)
class PowerExponents:
    """Per-stream power exponents r (powers P rho^r), all <= 0; -inf = off.

    The additive log-constants c encode fixed linear factors (e.g. -2 for a
    power of P/4): the exponent at finite rho is r + c / log2(rho), and the
    c's drop exactly in the GDoF limit.
    """

    r_1a: float = NEG_INF
    r_1p: float = NEG_INF
    r_2p1: float = NEG_INF
    r_2p2: float = NEG_INF
    r_3c: float = NEG_INF
    r_3a: float = NEG_INF
    r_3p: float = NEG_INF
    c_1a: float = 0.0
    c_1p: float = 0.0
    c_2p1: float = 0.0
    c_2p2: float = 0.0
    c_3c: float = 0.0
    c_3a: float = 0.0
    c_3p: float = 0.0

    STREAMS = ("1a", "1p", "2p1", "2p2", "3c", "3a", "3p")

    def r(self, stream: str) -> float:
        return getattr(self, f"r_{stream}")

    def effective(self, stream: str, rho: float) -> float:
        return self.r(stream) + getattr(self, f"c_{stream}") / math.log2(rho)

    def validate(self, a: AlphaVector, rho: float | None = None) -> None:
        """Power-sum constraints per transmitter and the alignment equality."""
        rho = rho or a.rho
        for stream in self.STREAMS:
            if self.r(stream) > 0:
                raise ValueError(f"r_{stream} must be <= 0, got {self.r(stream)}")
        for tx, streams in (("1", ("1a", "1p")), ("2", ("2p1", "2p2")), ("3", ("3c", "3a", "3p"))):
            total = sum(rho ** self.effective(s, rho) for s in streams if self.r(s) > NEG_INF)
            if total > 1 + 1e-9:
                raise ValueError(f"tx{tx} power budget exceeded: sum rho^r = {total:.6g} > 1")
        if self.r_1a > NEG_INF or self.r_3a > NEG_INF:
            lhs = a.alpha_c1 + self.r_1a
            rhs = a.alpha_c3 + self.r_3a
            if not (lhs == rhs or abs(lhs - rhs) <= 1e-9):
                raise ValueError(f"alignment broken: alpha_c1 + r_1a = {lhs} != alpha_c3 + r_3a = {rhs}")


@dataclass(frozen=True)
class GdofReport:
    d_total: float
    d_3c: float
    d_a: float
    d_1p: float
    d_3p: float
    d_2p1: float
    d_2p2: float
    ratio_tie: bool = False

    def to_json(self) -> dict:
        return {
            "d_total": self.d_total,
            "d_3c": self.d_3c,
            "d_a": self.d_a,
            "d_1p": self.d_1p,
            "d_3p": self.d_3p,
            "d_2p1": self.d_2p1,
            "d_2p2": self.d_2p2,
            "ratio_tie": self.ratio_tie,
        }


def gdof_iacp(a: AlphaVector, r: PowerExponents) -> GdofReport:
    """GDoF of the alignment scheme under a given power-exponent allocation.

    Each stream's pre-log is its received exponent minus the strongest
    exponent below it at the decoding receiver, floored at zero; the two
    alignment streams are limited by the smaller of their clean views at Rx1
    and their summed view at Rx2 (which of the two Rx1 orderings applies
    depends on which MAC link is effectively stronger).
    """
    r.validate(a)
    ad1, ac1, ad2, ac2, ad3, ac3 = a.as_tuple()
    r1a, r1p, r2p1, r2p2, r3c, r3a, r3p = (r.r(s) for s in PowerExponents.STREAMS)

    d_3c = min(
        _pos(ad3 + r3c - max(0.0, ad1 + r1a, ad1 + r1p, ad3 + r3a, ad3 + r3p, ac2 + r2p1, ac2 + r2p2)),
        _pos(ac3 + r3c - max(0.0, ac1 + r1a, ac1 + r1p, ac3 + r3a, ac3 + r3p, ad2 + r2p1, ad2 + r2p2)),
    )
    mac_floor = max(0.0, ac2 + r2p1, ac2 + r2p2)
    d_1p = _pos(ad1 + r1p - mac_floor)
    d_3p = _pos(ad3 + r3p - mac_floor)
    mac_sum = _pos(max(ad3 + r3p, ad1 + r1p) - mac_floor)
    d_2p1 = _pos(ad2 + r2p1 - max(0.0, ac1 + r1p, ac1 + r1a, ac3 + r3p, ac3 + r3a, ad2 + r2p2))
    d_2p2 = _pos(ad2 + r2p2 - max(0.0, ac1 + r1p, ac3 + r3p))
    common_a = _pos(ac1 + r1a - max(0.0, ac1 + r1p, ac3 + r3p, ad2 + r2p2))
    a1 = min(
        common_a,
        _pos(ad3 + r3a - max(0.0, ad1 + r1p, ad1 + r1a, ad3 + r3p, ac2 + r2p1, ac2 + r2p2)),
        _pos(ad1 + r1a - max(0.0, ad1 + r1p, ad3 + r3p, ac2 + r2p1, ac2 + r2p2)),
    )
    a2 = min(
        common_a,
        _pos(ad1 + r1a - max(0.0, ad1 + r1p, ad3 + r3p, ad3 + r3a, ac2 + r2p1, ac2 + r2p2)),
        _pos(ad3 + r3a - max(0.0, ad1 + r1p, ad3 + r3p, ac2 + r2p1, ac2 + r2p2)),
    )
    gap = (ad3 - ac3) - (ad1 - ac1)
    tie = abs(gap) <= 1e-12
    d_a = a1 if gap > 0 and not tie else a2
    total_private = min(d_1p + d_3p, mac_sum)
    d_3p_used = min(d_3p, total_private)
    d_1p_used = total_private - d_3p_used
    total = d_3c + 2 * d_a + d_1p_used + d_3p_used + d_2p1 + d_2p2
    return GdofReport(total, d_3c, d_a, d_1p_used, d_3p_used, d_2p1, d_2p2, tie)


def iacp_preset(a: AlphaVector) -> PowerExponents:
    """The fixed per-sub-regime power allocation proving the regime-3 gain."""
    label = classify_alpha(a)
    if not label.in_regime_3:
        raise ValueError(f"preset defined only in regime 3, got {label.value}")
    ad1, ac1, ad2, ac2, ad3, ac3 = a.as_tuple()
    if label is Regime.R3A:
        return PowerExponents(r_1p=-ac1, r_2p2=-ac2, r_3c=0.0)
    if label is Regime.R3B:
        off = -2.0
        return PowerExponents(
            r_1a=0.0,
            r_1p=-ac1,
            r_2p1=-ac2,
            r_2p2=max((ad3 - ac3) - (ad1 - ac1), ad1 - (ad3 - ac3)) - ad2,
            r_3c=0.0,
            r_3a=ac1 - ac3,
            r_3p=-ac3,
            c_1a=off, c_1p=off, c_2p1=off, c_2p2=off, c_3c=off, c_3a=off, c_3p=off,
        )
    # 3C: no common stream; the alignment gain is the smaller of two slacks
    # set by which effective MAC link is stronger and which cross link into
    # Rx1 is weaker.
    gap = (ad3 - ac3) - (ad1 - ac1)
    if gap > 0:
        da1 = gap
        da2 = (ad1 - ac1 - ad3 + 2 * ac3) if ac3 < ac1 else (ad1 - ad3 + ac3)
    else:
        da1 = ad1 - ac1 - ad3 + ac3
        da2 = (ad3 - ad1 + ac1) if ac3 < ac1 else (ad3 - ac3 - ad1 + 2 * ac1)
    off = -1.0
    return PowerExponents(
        r_1a=-_pos(ac1 - ac3),
        r_1p=-ac1,
        r_2p1=-ac2,
        r_2p2=max(da1, da2) - ad2,
        r_3a=-_pos(ac3 - ac1),
        r_3p=-ac3,
        c_1a=off, c_1p=off, c_2p1=off, c_2p2=off, c_3a=off, c_3p=off,
    )


def pacp_components(a: AlphaVector, phi: float, eps: float = 1e-9) -> dict:
    """Per-stream GDoF components of the phase-alignment scheme.

    Real/imaginary dimensions are used as two half-GDoF lanes; the alignment
    lane pays off whenever the phase mismatch phi is not a multiple of pi.
    """
    label = classify_alpha(a)
    if label is not Regime.SPECIAL_LINE:
        raise ValueError(f"phase alignment defined only on the special line, got {label.value}")
    ad1, ac1, ad2, ac2, ad3, ac3 = a.as_tuple()
    m = math.fmod(phi, math.pi)
    aligned_gain = min(abs(m), math.pi - abs(m)) > eps
    d_a = 0.5 * min(ac1, ac3) if aligned_gain else 0.0
    return {
        "d_1p_R": 0.5 * (ad1 - ac1),
        "d_1p_I": 0.5 * (ad1 - ac1),
        "d_a": d_a,
        "d_2p_R": 0.5 * (ad2 - ac2),
        "d_2p_I": 0.5 * ((ad2 - ac2) - min(ac1, ac3)),
        "d_3c_R": 0.5 * _pos(ac3 - (ad2 - ac2)),
        "d_3c_I": 0.5 * _pos(ac3 - (ad2 - ac2)),
        "phase_gain": aligned_gain,
    }


def gdof_pacp(a: AlphaVector, phi: float, eps: float = 1e-9) -> float:
    comps = pacp_components(a, phi, eps)
    base = gdof_tdma_tin(a)
    return base + (comps["d_a"] if comps["phase_gain"] else 0.0)


def gdof_numeric(rate_fn, a: AlphaVector, rho_lo: float, rho_hi: float) -> float:
    """Secant-slope GDoF estimate of any rate function of an AlphaVector."""
    if not 1 < rho_lo < rho_hi:
        raise ValueError(f"need 1 < rho_lo < rho_hi, got {rho_lo}, {rho_hi}")
    r_lo = rate_fn(a.with_rho(rho_lo))
    r_hi = rate_fn(a.with_rho(rho_hi))
    return (r_hi - r_lo) / (math.log2(rho_hi) - math.log2(rho_lo))


def gaussian_entropy_diff_check(
    h1: complex, h2: complex, h3: complex, P: float, n_samples: int, seed: int = 0
) -> dict:
    """Entropy difference of h1 A + h2 B versus h1 A + h3 B, Gaussian inputs.

    Under P |h2|^2 <= (|h3| / |h1|)^2 and P |h1|^2 > 1 the difference is at
    most 1 bit per symbol for any input powers up to P; sampled over random
    power pairs and evaluated in closed form.
    """
    g1, g2, g3 = (abs(h) ** 2 for h in (h1, h2, h3))
    if P * g1 <= 1:
        raise ValueError(f"need P |h1|^2 > 1, got {P * g1:.6g}")
    if g1 > 0 and P * g2 > g3 / g1 + 1e-12:
        raise ValueError(f"need P |h2|^2 <= (|h3|/|h1|)^2, got {P * g2:.6g} > {g3 / g1:.6g}")
    if n_samples <= 0:
        raise ValueError("n_samples must be > 0")
    rng = random.Random(seed)
    worst = -math.inf
    for _ in range(n_samples):
        pa = rng.uniform(0, P) or P
        pb = rng.uniform(0, P) or P
        diff = math.log2((1 + g1 * pa + g2 * pb) / (1 + g1 * pa + g3 * pb))
        worst = max(worst, diff)
    return {"diff_per_symbol": worst, "holds": worst <= 1 + 1e-9}
