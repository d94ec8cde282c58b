"""Shared sampling helpers for the test suite."""

import random

from pimac import AlphaVector, DetChannel, Regime, admissible, classify, classify_alpha


def random_admissible_det(rng: random.Random, max_n: int = 10) -> DetChannel:
    while True:
        t = tuple(rng.randint(0, max_n) for _ in range(6))
        ch = DetChannel(*t)
        if admissible(ch):
            return ch


def random_admissible_alpha(rng: random.Random, lo: float = 0.01, hi: float = 2.0) -> AlphaVector:
    while True:
        a = [rng.uniform(lo, hi) for _ in range(6)]
        if a[1] + a[3] <= min(a[0], a[2]):
            return AlphaVector(*a)


def sample_alpha_in(label: Regime, count: int, seed: int = 0, max_draws: int = 2_000_000):
    """Rejection-sample exponent vectors that classify to a given sub-regime."""
    rng = random.Random(seed)
    out = []
    for _ in range(max_draws):
        a = random_admissible_alpha(rng)
        if classify_alpha(a) is label:
            out.append(a)
            if len(out) == count:
                return out
    raise RuntimeError(f"could not draw {count} samples in {label}")


def sample_special_line_alpha(rng: random.Random) -> AlphaVector:
    """Construct a point with a_d3 - a_c3 = a_d1 - a_c1 exactly."""
    while True:
        d1 = rng.uniform(0.5, 2.0)
        c1 = rng.uniform(0.01, d1 / 2)
        d2 = rng.uniform(0.5, 2.0)
        c2 = rng.uniform(0.01, min(d1, d2) - c1) if min(d1, d2) > c1 + 0.01 else None
        if c2 is None:
            continue
        c3 = rng.uniform(0.01, 1.0)
        d3 = c3 + d1 - c1
        a = AlphaVector(d1, c1, d2, c2, d3, c3)
        if classify_alpha(a) is Regime.SPECIAL_LINE:
            return a
