"""Closed-form sum-rate analysis of the deterministic model.

Achievable sum-rates of the four transmission schemes (naive TIN, TDMA-TIN,
power-controlled TIN, interference alignment with common/private signalling),
the applicable genie-aided upper bounds, the known sum-capacity in regimes 1
and 2 and on the special line, and the full IA-CP signal plan that the
bit-exact simulator executes.

All quantities are exact integers. Throughout, mu = max(n_d3 - n_c3,
n_d1 - n_c1) and nu = min of the same pair; the special line is mu == nu.
"""

from __future__ import annotations

from dataclasses import dataclass

from .channel import DetChannel, Regime, admissible, classify

__all__ = [
    "InadmissibleChannel",
    "TdmaResult",
    "IaCpPlan",
    "DetRateReport",
    "naive_tin_rate",
    "tdma_tin_rate",
    "tdma_tin_detail",
    "power_control_tin_max",
    "ub1",
    "ub2",
    "ub3",
    "ub4",
    "ub_special",
    "min_upper_bound",
    "capacity",
    "capacity_with_source",
    "iacp_plan",
    "iacp_rate",
    "det_rate_report",
]

POWER_CONTROL_CAP = 20


class InadmissibleChannel(ValueError):
    def __init__(self, ch: DetChannel):
        super().__init__(
            f"inadmissible channel {ch.as_tuple()}: "
            f"n_c1 + n_c2 = {ch.n_c1 + ch.n_c2} > min(n_d1, n_d2) = {min(ch.n_d1, ch.n_d2)}"
        )


def _require_admissible(ch: DetChannel) -> None:
    if not admissible(ch):
        raise InadmissibleChannel(ch)


def _pos(x: int) -> int:
    return x if x > 0 else 0


def naive_tin_rate(ch: DetChannel) -> int:
    """All transmitters at full power, interference treated as noise.

    Rx1 sees the two MAC signals on top of Tx2's interference floor, Rx2 its
    own signal above the stronger of the two MAC cross links.
    """
    _require_admissible(ch)
    return _pos(max(ch.n_d1, ch.n_d3) - ch.n_c2) + _pos(ch.n_d2 - max(ch.n_c1, ch.n_c3))


@dataclass(frozen=True)
class TdmaResult:
    rate: int
    slot: str  # "p2p" | "ic12" | "ic32"


def tdma_tin_detail(ch: DetChannel) -> TdmaResult:
    """Best of the three time-sharing slot types, with the winner named.

    Slots: Tx3 alone (point-to-point), Tx1+Tx2 as a 2-user interference
    channel, Tx3+Tx2 likewise.
    """
    _require_admissible(ch)
    candidates = (
        (ch.n_d3, "p2p"),
        ((ch.n_d1 - ch.n_c2) + (ch.n_d2 - ch.n_c1), "ic12"),
        (_pos(ch.n_d3 - ch.n_c2) + _pos(ch.n_d2 - ch.n_c3), "ic32"),
    )
    best = max(candidates, key=lambda c: c[0])
    return TdmaResult(rate=best[0], slot=best[1])


def tdma_tin_rate(ch: DetChannel) -> int:
    return tdma_tin_detail(ch).rate


def power_control_tin_max(ch: DetChannel) -> int:
    """Brute-force best TIN sum-rate over all per-transmitter level cutbacks.

    Each transmitter may use only its top n_kk levels; the levels reaching
    the other receiver follow from the link-strength differences.  Exhausts
    the whole allocation set, so it serves as the oracle for the claim that
    power control never beats TDMA-TIN.
    """
    _require_admissible(ch)
    d1, c1, d2, c2, d3, c3 = ch.as_tuple()
    if max(ch.as_tuple()) > POWER_CONTROL_CAP:
        raise ValueError(f"parameters above {POWER_CONTROL_CAP} not supported by the exhaustive search")
    best = 0
    third_range = range(d3 + 1) if c3 <= d3 else range(c3 + 1)
    for n11 in range(d1 + 1):
        n21 = _pos(n11 - (d1 - c1))
        for n22 in range(d2 + 1):
            n12 = _pos(n22 - (d2 - c2))
            for t in third_range:
                if c3 <= d3:
                    n13, n23 = t, _pos(t - (d3 - c3))
                else:
                    n13, n23 = _pos(t - (c3 - d3)), t
                rate = _pos(max(n11, n13) - n12) + _pos(n22 - max(n21, n23))
                if rate > best:
                    best = rate
    return best


def ub1(ch: DetChannel) -> int:
    """Genie bound built from Rx1's view with Tx1's cross signal revealed."""
    _require_admissible(ch)
    d1, c1, d2, c2, d3, c3 = ch.as_tuple()
    return max(d1 - c1, c2, d3) + max(d2 - c2, c1)


def ub2(ch: DetChannel) -> int:
    """Genie bound built from Rx1's view with Tx3's cross signal revealed."""
    _require_admissible(ch)
    d1, c1, d2, c2, d3, c3 = ch.as_tuple()
    return max(d1, c2, d3 - c3) + max(d2 - c2, c3)


def ub3(ch: DetChannel) -> int | None:
    """Bound valid when Tx3's effective link is weak: n_d3 - n_c3 <= n_d1 - 2 n_c1."""
    _require_admissible(ch)
    d1, c1, d2, c2, d3, c3 = ch.as_tuple()
    if d3 - c3 > d1 - 2 * c1:
        return None
    return d1 - c1 + max(c3, d2 - c2)


def ub4(ch: DetChannel) -> int | None:
    """Bound valid when Tx3's effective link is strong: n_d3 - 2 n_c3 >= n_d1 - n_c1."""
    _require_admissible(ch)
    d1, c1, d2, c2, d3, c3 = ch.as_tuple()
    if d3 - 2 * c3 < d1 - c1:
        return None
    return d3 - c3 + max(c3, d2 - c2)


def ub_special(ch: DetChannel) -> int | None:
    """Bound valid only on the special line n_d3 - n_c3 = n_d1 - n_c1."""
    _require_admissible(ch)
    d1, c1, d2, c2, d3, c3 = ch.as_tuple()
    if d3 - c3 != d1 - c1:
        return None
    return max(d1 - c1, c2) + max(c1, c3, d2 - c2)


def min_upper_bound(ch: DetChannel) -> int:
    """Minimum over the applicable upper bounds."""
    vals = [ub1(ch), ub2(ch)]
    for f in (ub3, ub4, ub_special):
        v = f(ch)
        if v is not None:
            vals.append(v)
    return min(vals)


def capacity_with_source(ch: DetChannel) -> tuple[int | None, str]:
    """Known sum-capacity with the regime row that produced it.

    Exact in regimes 1 and 2 and on the special line; unknown in regime 3.
    """
    _require_admissible(ch)
    d1, c1, d2, c2, d3, c3 = ch.as_tuple()
    label = classify(ch)
    if label.in_regime_1:
        return d1 - c1 + d2 - c2, "regime1"
    if label in (Regime.R2A, Regime.R2B, Regime.R2C):
        return d3 - c3 + d2 - c2, label.value
    if label is Regime.R2D:
        return d3, "2D"
    if label is Regime.SPECIAL_LINE:
        return max(d3, (d1 - c1) + (d2 - c2)), "special-line"
    return None, "unknown (regime 3)"


def capacity(ch: DetChannel) -> int | None:
    return capacity_with_source(ch)[0]


@dataclass(frozen=True)
class IaCpPlan:
    """Complete signal plan of the alignment scheme.

    u_3c: R_3c common bits at the top of x3; u_1a/u_3a: R_a alignment bits
    each, offset by ell_1 / ell_3 so both land on the same levels at Rx2 but
    on distinct levels at Rx1; u_1p/u_3p and u_2p1/u_2p2: private bits under
    the respective cross-link cutoffs.
    """

    R_3c: int
    R_a: int
    ell_1: int
    ell_3: int
    R_1p: int
    R_3p: int
    R_2p1: int
    R_2p2: int
    mu: int
    nu: int

    @property
    def R_1p_plus_R_3p(self) -> int:
        return self.R_1p + self.R_3p

    @property
    def R_2p_total(self) -> int:
        return self.R_2p1 + self.R_2p2

    @property
    def sum_rate(self) -> int:
        return self.R_3c + 2 * self.R_a + self.R_1p_plus_R_3p + self.R_2p_total

    def to_json(self) -> dict:
        return {
            "R_3c": self.R_3c,
            "R_a": self.R_a,
            "ell_1": self.ell_1,
            "ell_3": self.ell_3,
            "R_1p": self.R_1p,
            "R_3p": self.R_3p,
            "R_2p1": self.R_2p1,
            "R_2p2": self.R_2p2,
            "mu": self.mu,
            "nu": self.nu,
            "sum_rate": self.sum_rate,
        }


def _alignment_cap(ch: DetChannel, mu: int, nu: int) -> int:
    """Number of alignment bits R_a, by region of the (n_d3, n_c3) plane.

    The plane between the lines bounding regime 3 splits into three bands by
    n_d3; each band and each ordering of n_c3 against n_c1 / n_d2 - n_c2 has
    its own cap, always also limited by mu - nu.
    """
    d1, c1, d2, c2, d3, c3 = ch.as_tuple()
    if mu == nu:
        return 0  # special line: no room between the two effective links
    band_1_hi = max(d1 - c1, c3 + d1 - 2 * c1)
    band_2_hi = c3 + d1 - c1
    if d3 <= band_1_hi:
        # Lowest band: alignment deliberately avoided.
        return 0
    if d3 < band_2_hi:
        if d2 - c2 < c3:
            return 0
        if c1 < c3:
            return min((d3 - c3) - (d1 - 2 * c1), mu - nu)
        return min(d3 - (d1 - c1), mu - nu)
    # Highest band (d3 > band_2_hi; d3 == band_2_hi is the special line).
    if d2 - c2 < c3:
        return min(d1 + c3 - d3, mu - nu)
    if c1 < c3:
        return min(d1 + c3 - d3, mu - nu)
    return min((d1 - c1) - (d3 - 2 * c3), mu - nu)


def iacp_plan(ch: DetChannel) -> IaCpPlan:
    """Signal plan of the alignment scheme in regime 3 / on the special line."""
    label = classify(ch)
    if not (label.in_regime_3 or label is Regime.SPECIAL_LINE):
        raise ValueError(f"alignment plan defined only in regime 3 or on the special line, got {label.value}")
    d1, c1, d2, c2, d3, c3 = ch.as_tuple()
    mu = max(d3 - c3, d1 - c1)
    nu = min(d3 - c3, d1 - c1)
    R_3c = min(_pos(d3 - (d1 - c1)), _pos(c3 - (d2 - c2)))
    ell_1 = _pos(c1 - c3)
    ell_3 = _pos(c3 - c1 - R_3c)
    R_a = _alignment_cap(ch, mu, nu)
    # Tx3's private bits fill its interference-free span first.
    R_3p = max(0, min(d3 - c3, mu))
    R_1p = mu - R_3p
    # Pin the aligned block directly above u_2p2 at Rx2.
    R_2p1 = d2 - c2 - min(c1, c3)
    R_2p2 = min(c1, c3) - R_a
    plan = IaCpPlan(R_3c, R_a, ell_1, ell_3, R_1p, R_3p, R_2p1, R_2p2, mu, nu)
    assert c1 - ell_1 == c3 - R_3c - ell_3, "alignment offset mismatch"
    assert min(plan.R_2p1, plan.R_2p2, plan.R_a, plan.R_3c) >= 0
    return plan


def iacp_rate(ch: DetChannel) -> int:
    """Sum-rate of the alignment scheme (regime 3 and the special line)."""
    label = classify(ch)
    d1, c1, d2, c2, d3, c3 = ch.as_tuple()
    if label is Regime.R3A:
        return min(d3 + (d2 - c2), c3 + (d1 - c1))
    if label is Regime.R3B:
        return min(d1 + c3, 2 * d3 - c3 - (d1 - c1))
    if label is Regime.R3C:
        mu = max(d3 - c3, d1 - c1)
        nu = min(d3 - c3, d1 - c1)
        return (d2 - c2) + min(2 * mu - nu, d1 - _pos(c1 - c3), d3 - _pos(c3 - c1))
    if label is Regime.SPECIAL_LINE:
        return max(d3, (d1 - c1) + (d2 - c2))
    raise ValueError(f"alignment rate defined only in regime 3 or on the special line, got {label.value}")


@dataclass(frozen=True)
class DetRateReport:
    """All closed-form quantities for one deterministic channel."""

    channel: DetChannel
    regime: Regime
    naive: int
    tdma: int
    tdma_slot: str
    pc_tin: int | None
    iacp: int | None
    ub1: int
    ub2: int
    ub3: int | None
    ub4: int | None
    ub_special: int | None
    min_ub: int
    capacity: int | None
    capacity_source: str

    CSV_HEADER = (
        "n_d1,n_c1,n_d2,n_c2,n_d3,n_c3,regime,naive,tdma,tdma_slot,pc_tin,"
        "iacp,ub1,ub2,ub3,ub4,ub_special,min_ub,capacity"
    )

    def to_json(self) -> dict:
        return {
            "channel": self.channel.to_json(),
            "regime": self.regime.value,
            "naive": self.naive,
            "tdma": self.tdma,
            "tdma_slot": self.tdma_slot,
            "pc_tin": self.pc_tin,
            "iacp": self.iacp,
            "ub1": self.ub1,
            "ub2": self.ub2,
            "ub3": self.ub3,
            "ub4": self.ub4,
            "ub_special": self.ub_special,
            "min_ub": self.min_ub,
            "capacity": self.capacity,
            "capacity_source": self.capacity_source,
        }

    def csv_row(self) -> str:
        def cell(v):
            return "" if v is None else str(v)

        vals = list(self.channel.as_tuple()) + [
            self.regime.value,
            self.naive,
            self.tdma,
            self.tdma_slot,
            self.pc_tin,
            self.iacp,
            self.ub1,
            self.ub2,
            self.ub3,
            self.ub4,
            self.ub_special,
            self.min_ub,
            self.capacity,
        ]
        return ",".join(cell(v) for v in vals)


def det_rate_report(ch: DetChannel, with_power_control: bool = True) -> DetRateReport:
    _require_admissible(ch)
    label = classify(ch)
    tdma = tdma_tin_detail(ch)
    has_iacp = label.in_regime_3 or label is Regime.SPECIAL_LINE
    cap, source = capacity_with_source(ch)
    return DetRateReport(
        channel=ch,
        regime=label,
        naive=naive_tin_rate(ch),
        tdma=tdma.rate,
        tdma_slot=tdma.slot,
        pc_tin=power_control_tin_max(ch) if with_power_control else None,
        iacp=iacp_rate(ch) if has_iacp else None,
        ub1=ub1(ch),
        ub2=ub2(ch),
        ub3=ub3(ch),
        ub4=ub4(ch),
        ub_special=ub_special(ch),
        min_ub=min_upper_bound(ch),
        capacity=cap,
        capacity_source=source,
    )
