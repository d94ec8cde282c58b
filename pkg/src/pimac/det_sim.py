"""Bit-exact simulation of the deterministic model.

Signals are binary vectors of length q = max n_k with bit 1 the top (most
significant) level.  Passing through a link of strength n means the top n
bits land on the bottom n positions of the receiver and everything else is
cut off, so a vector stored as an integer is simply shifted right by q - n:

    q = 4, x = 1011, n = 2:   top two bits "10" -> 0010

Each receiver XORs its three shifted arrivals.  The encoders place message
blocks exactly as the schemes prescribe; because every block then occupies
an interval free of interference at its intended receiver (the alignment
scheme's u_1a/u_3a pair shares one interval at Rx2 by construction and is
peeled as a single block), decoding is interval reads plus consistency
checks.

Also hosts the exact-entropy oracle for the shifted-XOR entropy difference
lemma: H of S^{l-l1}A xor S^{l-l2}B by full enumeration.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .channel import DetChannel
from .det_rates import IaCpPlan, iacp_plan

__all__ = [
    "BitVec",
    "Segment",
    "LevelLayout",
    "DecodeReport",
    "SCHEMES",
    "TDMA_SLOTS",
    "shift_apply",
    "channel_apply",
    "scheme_layout",
    "encode",
    "decode",
    "random_messages",
    "round_trip",
    "batch_round_trip",
    "exact_entropy",
    "lemma4_check",
]

SCHEMES = ("naive", "tdma", "iacp")
TDMA_SLOTS = ("p2p", "ic12", "ic32")
ENTROPY_MAX_ELL = 8


@dataclass(frozen=True)
class BitVec:
    """Length-q binary vector stored as an integer, bit 1 = top level."""

    q: int
    value: int = 0

    def __post_init__(self) -> None:
        if self.q < 0:
            raise ValueError("q must be >= 0")
        if not 0 <= self.value < (1 << self.q):
            raise ValueError(f"value {self.value} does not fit in {self.q} bits")

    def bit(self, i: int) -> int:
        """Bit at level i, 1-based from the top."""
        if not 1 <= i <= self.q:
            raise IndexError(f"level {i} outside [1, {self.q}]")
        return (self.value >> (self.q - i)) & 1

    def __xor__(self, other: "BitVec") -> "BitVec":
        if self.q != other.q:
            raise ValueError(f"length mismatch: {self.q} vs {other.q}")
        return BitVec(self.q, self.value ^ other.value)

    def __str__(self) -> str:
        return format(self.value, f"0{self.q}b") if self.q else ""


def shift_apply(x: BitVec, n_k: int) -> BitVec:
    """Send the top n_k bits of x to the bottom n_k positions, zeros above."""
    if not 0 <= n_k <= x.q:
        raise ValueError(f"shift strength {n_k} outside [0, {x.q}]")
    return BitVec(x.q, x.value >> (x.q - n_k) if n_k < x.q else x.value)


def channel_apply(x1: BitVec, x2: BitVec, x3: BitVec, ch: DetChannel) -> tuple[BitVec, BitVec]:
    """XOR of the three shifted transmit vectors at each receiver."""
    q = ch.q
    for x in (x1, x2, x3):
        if x.q != q:
            raise ValueError(f"input length {x.q} != channel q {q}")
    y1 = shift_apply(x1, ch.n_d1) ^ shift_apply(x2, ch.n_c2) ^ shift_apply(x3, ch.n_d3)
    y2 = shift_apply(x1, ch.n_c1) ^ shift_apply(x2, ch.n_d2) ^ shift_apply(x3, ch.n_c3)
    return y1, y2


@dataclass(frozen=True)
class Segment:
    """One message block inside a transmit vector.

    ``start`` is the number of levels above the block, so it occupies levels
    start+1 .. start+length; ``rx`` names the receiver that must recover it.
    """

    part: str
    tx: int  # 1, 2, or 3
    start: int
    length: int
    role: str  # "common" | "alignment" | "private"
    rx: int  # 1 or 2


@dataclass(frozen=True)
class LevelLayout:
    """All message blocks of one scheme instance on one channel."""

    scheme: str
    slot: str | None
    segments: tuple[Segment, ...]
    plan: IaCpPlan | None = None

    def rates(self) -> dict[str, int]:
        return {s.part: s.length for s in self.segments}

    def sum_rate(self) -> int:
        return sum(s.length for s in self.segments)

    def by_tx(self, tx: int) -> list[Segment]:
        return [s for s in self.segments if s.tx == tx]


def _pos(x: int) -> int:
    return x if x > 0 else 0


def _naive_segments(ch: DetChannel) -> list[Segment]:
    d1, c1, d2, c2, d3, c3 = ch.as_tuple()
    # The stronger MAC direct link sends its head-start above the other's
    # arrival, the weaker one fills down to the interference floor at Rx1.
    if d1 >= d3:
        r1 = _pos(d1 - max(d3, c2))
        r3 = _pos(d3 - c2)
    else:
        r3 = _pos(d3 - max(d1, c2))
        r1 = _pos(d1 - c2)
    r2 = _pos(d2 - max(c1, c3))
    segs = []
    if r1:
        segs.append(Segment("w1", 1, 0, r1, "private", 1))
    if r3:
        segs.append(Segment("w3", 3, 0, r3, "private", 1))
    if r2:
        segs.append(Segment("w2", 2, 0, r2, "private", 2))
    return segs


def _tdma_segments(ch: DetChannel, slot: str) -> list[Segment]:
    d1, c1, d2, c2, d3, c3 = ch.as_tuple()
    segs = []
    if slot == "p2p":
        if d3:
            segs.append(Segment("w3", 3, 0, d3, "private", 1))
    elif slot == "ic12":
        if _pos(d1 - c2):
            segs.append(Segment("w1", 1, 0, d1 - c2, "private", 1))
        if _pos(d2 - c1):
            segs.append(Segment("w2", 2, 0, d2 - c1, "private", 2))
    elif slot == "ic32":
        if _pos(d3 - c2):
            segs.append(Segment("w3", 3, 0, d3 - c2, "private", 1))
        if _pos(d2 - c3):
            segs.append(Segment("w2", 2, 0, d2 - c3, "private", 2))
    else:
        raise ValueError(f"unknown slot {slot!r}, expected one of {TDMA_SLOTS}")
    return segs


def _iacp_segments(ch: DetChannel, plan: IaCpPlan) -> list[Segment]:
    c1, c2, c3 = ch.n_c1, ch.n_c2, ch.n_c3
    segs = []
    if plan.R_3c:
        segs.append(Segment("u_3c", 3, 0, plan.R_3c, "common", 1))
    if plan.R_a:
        segs.append(Segment("u_1a", 1, plan.ell_1, plan.R_a, "alignment", 1))
        segs.append(Segment("u_3a", 3, plan.R_3c + plan.ell_3, plan.R_a, "alignment", 1))
    if plan.R_1p:
        segs.append(Segment("u_1p", 1, c1, plan.R_1p, "private", 1))
    if plan.R_3p:
        segs.append(Segment("u_3p", 3, c3, plan.R_3p, "private", 1))
    if plan.R_2p1:
        segs.append(Segment("u_2p1", 2, c2, plan.R_2p1, "private", 2))
    if plan.R_2p2:
        segs.append(Segment("u_2p2", 2, c2 + plan.R_2p1 + plan.R_a, plan.R_2p2, "private", 2))
    return segs


def scheme_layout(scheme: str, ch: DetChannel, slot: str | None = None) -> LevelLayout:
    """Deterministic block placement of a scheme on a channel."""
    if scheme == "naive":
        segs, plan = _naive_segments(ch), None
    elif scheme == "tdma":
        if slot is None:
            raise ValueError("tdma needs slot in " + repr(TDMA_SLOTS))
        segs, plan = _tdma_segments(ch, slot), None
    elif scheme == "iacp":
        plan = iacp_plan(ch)
        segs = _iacp_segments(ch, plan)
    else:
        raise ValueError(f"unknown scheme {scheme!r}, expected one of {SCHEMES}")
    layout = LevelLayout(scheme, slot if scheme == "tdma" else None, tuple(segs), plan)
    _validate_layout(layout, ch)
    return layout


_LINK = {(1, 1): "d1", (1, 2): "c1", (2, 1): "c2", (2, 2): "d2", (3, 1): "d3", (3, 2): "c3"}


def _arrival(seg: Segment, ch: DetChannel, rx: int) -> tuple[int, int] | None:
    """Interval (lo, hi) of y_rx positions carrying the visible part of seg.

    Positions are 1-based from the top of y; levels of seg below the link
    cutoff are dropped.  None if nothing of seg reaches rx.
    """
    n = getattr(ch, "n_" + _LINK[(seg.tx, rx)])
    top = seg.start + 1
    bot = min(seg.start + seg.length, n)
    if top > bot:
        return None
    q = ch.q
    return (q - n + top, q - n + bot)


def _validate_layout(layout: LevelLayout, ch: DetChannel) -> None:
    """Every block fits its transmitter and every intended read is clean."""
    q = ch.q
    for tx in (1, 2, 3):
        covered = []
        for s in layout.by_tx(tx):
            if s.start < 0 or s.length <= 0 or s.start + s.length > q:
                raise ValueError(f"segment {s} outside [1, {q}]")
            covered.append((s.start + 1, s.start + s.length))
        covered.sort()
        for a, b in zip(covered, covered[1:]):
            if b[0] <= a[1]:
                raise ValueError(f"overlapping segments on tx{tx}: {a} and {b}")
    for rx in (1, 2):
        arrivals = []
        for s in layout.segments:
            iv = _arrival(s, ch, rx)
            if iv is not None:
                arrivals.append((iv, s))
        for i, (iv_a, sa) in enumerate(arrivals):
            for iv_b, sb in arrivals[i + 1 :]:
                if sa.rx != rx and sb.rx != rx:
                    continue  # interference may overlap interference
                if iv_a[0] > iv_b[1] or iv_b[0] > iv_a[1]:
                    continue
                raise ValueError(
                    f"colliding arrivals at rx{rx}: {sa.part}{iv_a} vs {sb.part}{iv_b}"
                )
    # Alignment witness: the two alignment streams share one interval at Rx2.
    if layout.scheme == "iacp" and layout.plan is not None and layout.plan.R_a:
        segs = {s.part: s for s in layout.segments}
        if _arrival(segs["u_1a"], ch, 2) != _arrival(segs["u_3a"], ch, 2):
            raise ValueError("alignment streams do not coincide at rx2")
    # Intended reads must be fully visible.
    for s in layout.segments:
        iv = _arrival(s, ch, s.rx)
        if iv is None or iv[1] - iv[0] + 1 != s.length:
            raise ValueError(f"{s.part} not fully visible at rx{s.rx}")


def encode(
    scheme: str, ch: DetChannel, messages: dict[str, int], slot: str | None = None
) -> tuple[BitVec, BitVec, BitVec]:
    """Build the three transmit vectors from per-part message integers."""
    layout = scheme_layout(scheme, ch, slot)
    q = ch.q
    expect = set(layout.rates())
    if set(messages) != expect:
        raise ValueError(f"message parts {sorted(messages)} != layout parts {sorted(expect)}")
    vals = {1: 0, 2: 0, 3: 0}
    for s in layout.segments:
        m = messages[s.part]
        if not 0 <= m < (1 << s.length):
            raise ValueError(f"{s.part} needs {s.length} bits, got value {m}")
        vals[s.tx] |= m << (q - s.start - s.length)
    return BitVec(q, vals[1]), BitVec(q, vals[2]), BitVec(q, vals[3])


@dataclass
class DecodeReport:
    """Outcome of decoding one transmission."""

    scheme: str
    slot: str | None
    recovered: dict[str, int]
    success: dict[str, bool]
    bit_errors: dict[str, int]
    achieved_rate: int

    @property
    def all_ok(self) -> bool:
        return all(self.success.values())

    def to_json(self) -> dict:
        return {
            "scheme": self.scheme,
            "slot": self.slot,
            "recovered": self.recovered,
            "success": self.success,
            "bit_errors": self.bit_errors,
            "achieved_rate": self.achieved_rate,
            "all_ok": self.all_ok,
        }


def decode(
    scheme: str,
    ch: DetChannel,
    y1: BitVec,
    y2: BitVec,
    slot: str | None = None,
    messages: dict[str, int] | None = None,
) -> DecodeReport:
    """Recover every message block at its intended receiver.

    Each block sits on an interference-free interval (checked structurally
    at layout time), so recovery is an interval read; with the true messages
    supplied, bit errors are counted and success demands zero of them.
    """
    layout = scheme_layout(scheme, ch, slot)
    ys = {1: y1, 2: y2}
    recovered: dict[str, int] = {}
    success: dict[str, bool] = {}
    errors: dict[str, int] = {}
    for s in layout.segments:
        y = ys[s.rx]
        lo, hi = _arrival(s, ch, s.rx)
        word = (y.value >> (y.q - hi)) & ((1 << s.length) - 1)
        recovered[s.part] = word
        if messages is not None:
            diff = word ^ messages[s.part]
            errors[s.part] = bin(diff).count("1")
            success[s.part] = diff == 0
        else:
            errors[s.part] = 0
            success[s.part] = True
    achieved = sum(s.length for s in layout.segments if success[s.part])
    return DecodeReport(scheme, layout.slot, recovered, success, errors, achieved)


def random_messages(scheme: str, ch: DetChannel, seed: int, slot: str | None = None) -> dict[str, int]:
    layout = scheme_layout(scheme, ch, slot)
    rng = random.Random(seed)
    return {part: rng.getrandbits(length) for part, length in sorted(layout.rates().items())}


def round_trip(scheme: str, ch: DetChannel, seed: int, slot: str | None = None) -> DecodeReport:
    """encode -> channel -> decode with seeded messages; exact by construction."""
    messages = random_messages(scheme, ch, seed, slot)
    x1, x2, x3 = encode(scheme, ch, messages, slot)
    y1, y2 = channel_apply(x1, x2, x3, ch)
    return decode(scheme, ch, y1, y2, slot, messages)


def batch_round_trip(
    scheme: str, ch: DetChannel, trials: int, seed: int, slot: str | None = None
) -> tuple[bool, int]:
    """Many independent round trips at once, one bit plane per trial.

    Each level holds an integer whose bit t is that level's value in trial t,
    so XOR and shifting act on all trials simultaneously.  Returns (all
    trials exact, per-trial sum rate).
    """
    layout = scheme_layout(scheme, ch, slot)
    q = ch.q
    rng = random.Random(seed)
    messages = {
        s.part: [rng.getrandbits(trials) for _ in range(s.length)]
        for s in sorted(layout.segments, key=lambda s: s.part)
    }
    x = {1: [0] * q, 2: [0] * q, 3: [0] * q}
    for s in layout.segments:
        for j, plane in enumerate(messages[s.part]):
            x[s.tx][s.start + j] = plane

    def shifted(levels: list[int], n: int) -> list[int]:
        return [0] * (q - n) + levels[:n]

    def xor3(a, b, c):
        return [p ^ r ^ s for p, r, s in zip(a, b, c)]

    y = {
        1: xor3(shifted(x[1], ch.n_d1), shifted(x[2], ch.n_c2), shifted(x[3], ch.n_d3)),
        2: xor3(shifted(x[1], ch.n_c1), shifted(x[2], ch.n_d2), shifted(x[3], ch.n_c3)),
    }
    ok = True
    for s in layout.segments:
        lo, hi = _arrival(s, ch, s.rx)
        got = y[s.rx][lo - 1 : hi]
        if got != messages[s.part]:
            ok = False
    return ok, layout.sum_rate()


def _check_pmf(p: np.ndarray, ell: int, name: str) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if p.shape != (1 << ell,):
        raise ValueError(f"{name} must have length 2^{ell} = {1 << ell}, got {p.shape}")
    if np.any(p < 0) or abs(p.sum() - 1.0) > 1e-12:
        raise ValueError(f"{name} is not a pmf (tolerance 1e-12)")
    return p


def exact_entropy(dist_pairs, ell: int, ell1: int, ell2: int) -> float:
    """Exact H(S^{l-l1} A xor S^{l-l2} B) in bits, by full enumeration.

    dist_pairs = (pmf of A, pmf of B), independent, over F2^ell, most
    significant bit first.
    """
    if not 0 < ell <= ENTROPY_MAX_ELL:
        raise ValueError(f"ell must be in [1, {ENTROPY_MAX_ELL}], got {ell}")
    for name, l in (("ell1", ell1), ("ell2", ell2)):
        if not 0 <= l <= ell:
            raise ValueError(f"{name} must be in [0, {ell}], got {l}")
    p_a = _check_pmf(dist_pairs[0], ell, "pmf of A")
    p_b = _check_pmf(dist_pairs[1], ell, "pmf of B")
    idx = np.arange(1 << ell)
    ya = idx >> (ell - ell1) if ell1 < ell else idx
    yb = idx >> (ell - ell2) if ell2 < ell else idx
    joint = np.outer(p_a, p_b)
    py = np.bincount((ya[:, None] ^ yb[None, :]).ravel(), weights=joint.ravel(), minlength=1 << ell)
    pz = py[py > 0]
    return float(-(pz * np.log2(pz)).sum())


def lemma4_check(dist_pairs, ell: int, ell1: int, ell2: int, ell3: int) -> dict:
    """Entropy difference of the two shifted-XOR observations.

    With B arriving no higher at the first observer than its headroom at the
    second (ell2 <= ell3 - ell1), the first observation never carries more
    entropy: H(Y_A) - H(Y_B) <= 0.
    """
    if ell2 > ell3 - ell1:
        raise ValueError(f"need ell2 <= ell3 - ell1, got ell2={ell2}, ell3-ell1={ell3 - ell1}")
    if not 0 <= ell3 <= ell:
        raise ValueError(f"ell3 must be in [0, {ell}], got {ell3}")
    h_a = exact_entropy(dist_pairs, ell, ell1, ell2)
    h_b = exact_entropy(dist_pairs, ell, ell1, ell3)
    diff = h_a - h_b
    return {"diff": diff, "holds": diff <= 1e-10}
