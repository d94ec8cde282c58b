"""Channel parameterizations, admissibility, and regime classification.

Two models of the same network (Tx1, Tx3 -> Rx1 forming a MAC, Tx2 -> Rx2 a
point-to-point link, all six cross/direct gains present):

* deterministic: six non-negative integers n_k counting the bit levels each
  link passes (``DetChannel``),
* Gaussian: six complex gains plus a transmit power, with derived SNR
  exponents alpha_k = log2(P |h_k|^2) / log2(rho) (``GaussChannel`` /
  ``AlphaVector``).

The parameter space splits into three regimes plus the special line
n_d3 - n_c3 = n_d1 - n_c1, further refined into sub-regimes 1A..3C; the
classifier here is the single source of truth for that partition.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, replace

__all__ = [
    "DetChannel",
    "GaussChannel",
    "AlphaVector",
    "Regime",
    "InterferenceLimitViolation",
    "admissible",
    "classify",
    "classify_alpha",
    "alpha_from_gauss",
    "det_from_gauss",
]

LINK_NAMES = ("d1", "c1", "d2", "c2", "d3", "c3")


class InterferenceLimitViolation(ValueError):
    """A Gaussian channel fails |h_k|^2 P > 1 on the named link."""

    def __init__(self, link: str, value: float):
        self.link = link
        self.value = value
        super().__init__(f"interference-limited violated on {link}: |h|^2 P = {value:.6g} <= 1")


@dataclass(frozen=True)
class DetChannel:
    """Bit-level strengths of the six links of the deterministic model."""

    n_d1: int
    n_c1: int
    n_d2: int
    n_c2: int
    n_d3: int
    n_c3: int

    def __post_init__(self) -> None:
        for name in LINK_NAMES:
            v = getattr(self, f"n_{name}")
            if not isinstance(v, int) or v < 0:
                raise ValueError(f"n_{name} must be a non-negative integer, got {v!r}")

    @property
    def q(self) -> int:
        return max(self.as_tuple())

    def as_tuple(self) -> tuple[int, int, int, int, int, int]:
        return (self.n_d1, self.n_c1, self.n_d2, self.n_c2, self.n_d3, self.n_c3)

    @classmethod
    def from_seq(cls, seq) -> "DetChannel":
        vals = list(seq)
        if len(vals) != 6:
            raise ValueError(f"need 6 integers d1,c1,d2,c2,d3,c3, got {len(vals)}")
        return cls(*(int(v) for v in vals))

    def to_json(self) -> list[int]:
        return list(self.as_tuple())


@dataclass(frozen=True)
class GaussChannel:
    """Complex gains, transmit power, and reference SNR of the Gaussian model."""

    h_d1: complex
    h_c1: complex
    h_d2: complex
    h_c2: complex
    h_d3: complex
    h_c3: complex
    P: float
    rho: float

    def __post_init__(self) -> None:
        if self.P <= 0:
            raise ValueError(f"P must be > 0, got {self.P}")
        if self.rho <= 1:
            raise ValueError(f"rho must be > 1, got {self.rho}")

    def gain(self, link: str) -> complex:
        return getattr(self, f"h_{link}")

    def snr(self, link: str) -> float:
        """|h_k|^2 P for the named link."""
        return abs(self.gain(link)) ** 2 * self.P

    def phase(self, link: str) -> float:
        return cmath.phase(self.gain(link))

    @property
    def phi(self) -> float:
        """Phase mismatch of the two MAC paths: (c3 - d3) - (c1 - d1)."""
        return self.phase("c3") - self.phase("d3") - self.phase("c1") + self.phase("d1")

    @property
    def theta(self) -> float:
        """Phase mismatch seen by Rx2: (c2 - d2) + (c1 - d1)."""
        return self.phase("c2") - self.phase("d2") + self.phase("c1") - self.phase("d1")

    def check_interference_limited(self) -> None:
        for name in LINK_NAMES:
            s = self.snr(name)
            if s <= 1.0:
                raise InterferenceLimitViolation(name, s)


@dataclass(frozen=True)
class AlphaVector:
    """SNR exponents alpha_k of the six links with their reference SNR rho."""

    alpha_d1: float
    alpha_c1: float
    alpha_d2: float
    alpha_c2: float
    alpha_d3: float
    alpha_c3: float
    rho: float = 2.0

    def __post_init__(self) -> None:
        if self.rho <= 1:
            raise ValueError(f"rho must be > 1, got {self.rho}")
        for name in LINK_NAMES:
            v = getattr(self, f"alpha_{name}")
            if v < 0:
                raise ValueError(f"alpha_{name} must be >= 0, got {v}")

    def as_tuple(self) -> tuple[float, float, float, float, float, float]:
        return (
            self.alpha_d1,
            self.alpha_c1,
            self.alpha_d2,
            self.alpha_c2,
            self.alpha_d3,
            self.alpha_c3,
        )

    @classmethod
    def from_seq(cls, seq, rho: float = 2.0) -> "AlphaVector":
        vals = [float(v) for v in seq]
        if len(vals) != 6:
            raise ValueError(f"need 6 exponents d1,c1,d2,c2,d3,c3, got {len(vals)}")
        return cls(*vals, rho=rho)

    def with_rho(self, rho: float) -> "AlphaVector":
        return replace(self, rho=rho)

    def to_json(self) -> dict:
        return {"alpha": list(self.as_tuple()), "rho": self.rho}


class Regime(enum.Enum):
    """Sub-regime label; ``macro`` collapses it to the coarse partition."""

    R1A = "1A"
    R1B = "1B"
    R1C = "1C"
    R2A = "2A"
    R2B = "2B"
    R2C = "2C"
    R2D = "2D"
    R3A = "3A"
    R3B = "3B"
    R3C = "3C"
    SPECIAL_LINE = "special-line"
    INADMISSIBLE = "inadmissible"

    @property
    def macro(self) -> str:
        if self in (Regime.SPECIAL_LINE, Regime.INADMISSIBLE):
            return self.value
        return "regime" + self.value[0]

    @property
    def in_regime_1(self) -> bool:
        return self.macro == "regime1"

    @property
    def in_regime_2(self) -> bool:
        return self.macro == "regime2"

    @property
    def in_regime_3(self) -> bool:
        return self.macro == "regime3"


def admissible(ch: DetChannel) -> bool:
    """Both cross links into the MAC receiver fit under each direct link."""
    return ch.n_c1 + ch.n_c2 <= min(ch.n_d1, ch.n_d2)


def _classify_values(d1, c1, d2, c2, d3, c3, special: bool) -> Regime:
    """Shared decision tree over exact integers or reals.

    ``special`` is the caller's verdict on d3 - c3 == d1 - c1 (exact for
    integers, eps-tolerant for reals); everything else is plain comparison.
    """
    if c1 + c2 > min(d1, d2):
        return Regime.INADMISSIBLE
    if special:
        return Regime.SPECIAL_LINE
    # Tx3 can be silenced without losing sum-rate.
    if d3 <= d1 - c1 or (d3 - (d1 - 2 * c1) <= c3 <= d2 - c2):
        if d3 <= d1 - c1:
            return Regime.R1A if c3 <= c1 else Regime.R1B
        return Regime.R1C
    # Tx1 can be silenced without losing sum-rate.
    if min(c3, c1) + d1 - c1 <= d3 - c3:
        if d3 - c3 >= d1:
            if c1 <= c3 <= d2 - c2:
                return Regime.R2A
            if c3 < c1:
                return Regime.R2B
            return Regime.R2D
        return Regime.R2C
    # Remaining cases: all three transmitters needed.
    if d1 - c1 < d3 < c3 + d1 - c1 and d2 - c2 < c3:
        return Regime.R3A
    if c3 + d1 - c1 < d3 < d1 + c3 and d2 - c2 < c3:
        return Regime.R3B
    if (
        max(d1 - c1, d1 - 2 * c1 + c3) < d3 < min(d1 - c1 + 2 * c3, c3 + d1)
        and c3 <= d2 - c2
    ):
        return Regime.R3C
    raise AssertionError(f"unclassified admissible point {(d1, c1, d2, c2, d3, c3)}")


def classify(ch: DetChannel) -> Regime:
    """Exact-integer sub-regime label of a deterministic channel."""
    d1, c1, d2, c2, d3, c3 = ch.as_tuple()
    return _classify_values(d1, c1, d2, c2, d3, c3, special=(d3 - c3 == d1 - c1))


def classify_alpha(a: AlphaVector, eps: float = 1e-9) -> Regime:
    """Real-arithmetic classifier; the special line is detected within eps."""
    if eps <= 0:
        raise ValueError(f"eps must be > 0, got {eps}")
    d1, c1, d2, c2, d3, c3 = a.as_tuple()
    special = abs((d3 - c3) - (d1 - c1)) <= eps
    return _classify_values(d1, c1, d2, c2, d3, c3, special=special)


def alpha_from_gauss(g: GaussChannel) -> AlphaVector:
    """SNR exponents log2(P |h_k|^2) / log2(rho) of an interference-limited channel."""
    g.check_interference_limited()
    log_rho = math.log2(g.rho)
    vals = [math.log2(g.snr(name)) / log_rho for name in LINK_NAMES]
    return AlphaVector(*vals, rho=g.rho)


def det_from_gauss(g: GaussChannel) -> DetChannel:
    """Bit-level strengths floor(log2(P |h_k|^2)) of an interference-limited channel."""
    g.check_interference_limited()
    vals = [int(math.floor(math.log2(g.snr(name)))) for name in LINK_NAMES]
    return DetChannel(*vals)
