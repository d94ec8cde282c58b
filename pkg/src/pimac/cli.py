"""Command-line front end.

Channels are given as comma-separated sextuples in the order
d1,c1,d2,c2,d3,c3 (bit levels via --det, SNR exponents via --alpha).
Reports are JSON (stable key order) or CSV (header row, '.' decimal, UTF-8,
LF).  Exit codes: 0 success, 1 invalid input, 2 a checked property was
falsified by a verify/sweep command.

Relative --out paths resolve under $PIMAC_OUT_DIR when it is set.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass

from .channel import (
    AlphaVector,
    DetChannel,
    InterferenceLimitViolation,
    admissible,
    classify,
    classify_alpha,
)
from .det_rates import (
    InadmissibleChannel,
    capacity_with_source,
    det_rate_report,
    iacp_plan,
)
from .channel import Regime
from .det_sim import TDMA_SLOTS, batch_round_trip, exact_entropy, lemma4_check, round_trip
from .gauss_rates import (
    gdof_iacp,
    gdof_naive_tin,
    gdof_pacp,
    gdof_tdma_tin,
    iacp_preset,
    min_ub_g,
    naive_tin_rate_g,
    tdma_tin_rate_g,
    ub_g,
)
from .sweep import gap_sweep, gdof_dominance_sweep, regime_map, regime_map_csv, verify_det_grid

__all__ = ["RunConfig", "load_config", "run", "main"]

COMMANDS = (
    "classify",
    "det-rates",
    "det-capacity",
    "det-simulate",
    "det-verify",
    "entropy-oracle",
    "gauss-rates",
    "gauss-bounds",
    "gdof",
    "gap-sweep",
    "regime-map",
    "gdof-sweep",
)

OUT_DIR_ENV = "PIMAC_OUT_DIR"


class CliError(ValueError):
    pass


@dataclass
class RunConfig:
    model: str = "det"
    det: DetChannel | None = None
    alpha: AlphaVector | None = None
    options: dict | None = None

    @property
    def channel(self):
        return self.det if self.det is not None else self.alpha


def load_config(path: str) -> RunConfig:
    """Read and validate a JSON config file; flags still override its values."""
    try:
        with open(path, encoding="utf-8") as f:
            raw = json.load(f)
    except OSError as e:
        raise CliError(f"cannot read config {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise CliError(f"config {path} is not valid JSON: {e}") from e
    if not isinstance(raw, dict):
        raise CliError("config error at /: expected an object")
    model = raw.get("model", "det")
    if model not in ("det", "gauss"):
        raise CliError("config error at /model: expected 'det' or 'gauss'")
    has_det = "channel" in raw
    has_alpha = "alpha" in raw
    if has_det and has_alpha:
        raise CliError("config error at /: exactly one channel (channel or alpha) allowed")
    if not has_det and not has_alpha:
        raise CliError("config error at /channel: missing channel")
    det = alpha = None
    if has_det:
        try:
            det = DetChannel.from_seq(raw["channel"])
        except (TypeError, ValueError) as e:
            raise CliError(f"config error at /channel: {e}") from e
    else:
        try:
            alpha = AlphaVector.from_seq(raw["alpha"], rho=float(raw.get("rho", 100.0)))
        except (TypeError, ValueError) as e:
            raise CliError(f"config error at /alpha: {e}") from e
    opts = {
        k: v
        for k, v in raw.items()
        if k not in ("model", "channel", "alpha", "rho")
    }
    return RunConfig(model=model, det=det, alpha=alpha, options=opts)


def _parse_det(text: str) -> DetChannel:
    try:
        return DetChannel.from_seq(text.split(","))
    except ValueError as e:
        raise CliError(f"bad --det {text!r} (want d1,c1,d2,c2,d3,c3): {e}") from e


def _parse_alpha(text: str, rho: float) -> AlphaVector:
    try:
        return AlphaVector.from_seq(text.split(","), rho=rho)
    except ValueError as e:
        raise CliError(f"bad --alpha {text!r} (want d1,c1,d2,c2,d3,c3): {e}") from e


def _parse_range(text: str) -> list[int]:
    """Accept 'lo:hi' (inclusive) or a comma list."""
    if ":" in text:
        lo, hi = text.split(":", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(v) for v in text.split(",")]


def _json_text(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _write_output(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    base = os.environ.get(OUT_DIR_ENV)
    if base and not os.path.isabs(out):
        out = os.path.join(base, out)
    with open(out, "w", encoding="utf-8", newline="") as f:
        f.write(text)


def _need_channel(cfg: RunConfig, args, kind: str):
    if kind == "det":
        ch = _parse_det(args.det) if args.det else cfg.det
        if ch is None:
            raise CliError("a deterministic channel is required (--det d1,c1,d2,c2,d3,c3)")
        return ch
    a = _parse_alpha(args.alpha, args.rho) if args.alpha else cfg.alpha
    if a is None:
        raise CliError("an exponent vector is required (--alpha d1,c1,d2,c2,d3,c3)")
    if args.rho and a.rho != args.rho:
        a = a.with_rho(args.rho)
    return a


def _cmd_classify(cfg, args) -> tuple[str, int]:
    if args.det or (cfg.det is not None and not args.alpha):
        ch = _need_channel(cfg, args, "det")
        label = classify(ch)
        payload = {
            "channel": ch.to_json(),
            "regime": label.value,
            "macro": label.macro,
            "admissible": admissible(ch),
        }
    else:
        a = _need_channel(cfg, args, "alpha")
        label = classify_alpha(a, eps=args.eps)
        payload = {
            "alpha": list(a.as_tuple()),
            "regime": label.value,
            "macro": label.macro,
            "admissible": label is not Regime.INADMISSIBLE,
        }
    return _json_text(payload), 0


def _cmd_det_rates(cfg, args) -> tuple[str, int]:
    ch = _need_channel(cfg, args, "det")
    report = det_rate_report(ch, with_power_control=not args.no_power_control)
    if args.format == "csv":
        return report.CSV_HEADER + "\n" + report.csv_row() + "\n", 0
    return _json_text(report.to_json()), 0


def _cmd_det_capacity(cfg, args) -> tuple[str, int]:
    ch = _need_channel(cfg, args, "det")
    value, source = capacity_with_source(ch)
    return _json_text({"channel": ch.to_json(), "capacity": value, "source": source}), 0


def _cmd_det_simulate(cfg, args) -> tuple[str, int]:
    ch = _need_channel(cfg, args, "det")
    scheme = args.scheme
    slots = [args.slot] if scheme != "tdma" else ([args.slot] if args.slot else list(TDMA_SLOTS))
    if args.trials > 1:
        lines = ["seed,scheme,slot,n_d1,n_c1,n_d2,n_c2,n_d3,n_c3,success,rate"]
        code = 0
        for slot in slots:
            ok, rate = batch_round_trip(scheme, ch, args.trials, args.seed, slot=slot)
            tup = ",".join(str(v) for v in ch.as_tuple())
            lines.append(f"{args.seed},{scheme},{slot or ''},{tup},{ok},{rate}")
            if not ok:
                code = 2
        return "\n".join(lines) + "\n", code
    reports = [round_trip(scheme, ch, args.seed, slot=slot).to_json() for slot in slots]
    payload = reports[0] if len(reports) == 1 else reports
    ok = all(r["all_ok"] for r in (reports if isinstance(payload, list) else [payload]))
    return _json_text(payload), 0 if ok else 2


def _cmd_det_verify(cfg, args) -> tuple[str, int]:
    report = verify_det_grid(args.max_n, seed=args.seed, mutate=args.mutate)
    return _json_text(report.to_json()), 0 if report.ok else 2


def _cmd_entropy_oracle(cfg, args) -> tuple[str, int]:
    import numpy as np

    size = 1 << args.ell
    if args.random_dist:
        rng = np.random.default_rng(args.seed)
        p_a = rng.random(size)
        p_a /= p_a.sum()
        p_b = rng.random(size)
        p_b /= p_b.sum()
    else:
        bits = np.arange(size)[:, None] >> np.arange(args.ell - 1, -1, -1)[None, :] & 1
        per_bit = np.where(bits == 1, args.p, 1 - args.p)
        p_a = per_bit.prod(axis=1)
        p_b = p_a.copy()
    if args.ell3 is not None:
        result = lemma4_check((p_a, p_b), args.ell, args.ell1, args.ell2, args.ell3)
        return _json_text(result), 0
    h = exact_entropy((p_a, p_b), args.ell, args.ell1, args.ell2)
    return _json_text({"entropy_bits": h}), 0


def _cmd_gauss_rates(cfg, args) -> tuple[str, int]:
    a = _need_channel(cfg, args, "alpha")
    tdma = tdma_tin_rate_g(a)
    payload = {
        "alpha": list(a.as_tuple()),
        "rho": a.rho,
        "naive": naive_tin_rate_g(a),
        "tdma": tdma.rate,
        "tdma_share": list(tdma.share.as_tuple()),
    }
    return _json_text(payload), 0


def _cmd_gauss_bounds(cfg, args) -> tuple[str, int]:
    a = _need_channel(cfg, args, "alpha")
    payload = {
        "alpha": list(a.as_tuple()),
        "rho": a.rho,
        "ub1": ub_g(a, 1),
        "ub2": ub_g(a, 2),
        "ub3": ub_g(a, 3),
        "ub4": ub_g(a, 4),
        "min_ub": min_ub_g(a),
    }
    return _json_text(payload), 0


def _cmd_gdof(cfg, args) -> tuple[str, int]:
    a = _need_channel(cfg, args, "alpha")
    label = classify_alpha(a, eps=args.eps)
    payload = {
        "alpha": list(a.as_tuple()),
        "regime": label.value,
        "naive": gdof_naive_tin(a),
        "tdma": gdof_tdma_tin(a),
        "iacp": None,
        "pacp": None,
    }
    if label.in_regime_3:
        payload["iacp"] = gdof_iacp(a, iacp_preset(a)).to_json()
    if label is Regime.SPECIAL_LINE:
        payload["pacp"] = {
            "phi": math.pi / 2,
            "d_total": gdof_pacp(a, math.pi / 2),
        }
    return _json_text(payload), 0


def _cmd_gap_sweep(cfg, args) -> tuple[str, int]:
    a = _need_channel(cfg, args, "alpha")
    rhos = [float(v) for v in args.rhos.split(",")]
    rows = gap_sweep(a, rhos)
    code = 0 if all(r.within_bound for r in rows) else 2
    if args.format == "csv":
        header = (
            "rho,achievable_naive,achievable_tdma,min_ub,gap_naive,gap_tdma,"
            "regime,bound_constant_naive,bound_constant_tdma,within_bound"
        )
        lines = [header]
        for r in rows:
            cells = [
                format(r.rho, ".12g"),
                format(r.achievable_naive, ".12g"),
                format(r.achievable_tdma, ".12g"),
                format(r.min_ub, ".12g"),
                format(r.gap_naive, ".12g"),
                format(r.gap_tdma, ".12g"),
                r.regime,
                "" if r.bound_constant_naive is None else format(r.bound_constant_naive, ".12g"),
                "" if r.bound_constant_tdma is None else format(r.bound_constant_tdma, ".12g"),
                str(r.within_bound),
            ]
            lines.append(",".join(cells))
        return "\n".join(lines) + "\n", code
    return _json_text([r.to_json() for r in rows]), code


def _cmd_regime_map(cfg, args) -> tuple[str, int]:
    fixed = [float(v) for v in args.fixed.split(",")]
    if len(fixed) != 4:
        raise CliError(f"bad --fixed {args.fixed!r} (want d1,c1,d2,c2)")
    if all(v.is_integer() for v in fixed):
        fixed = [int(v) for v in fixed]
    rows = regime_map(fixed, _parse_range(args.d3), _parse_range(args.c3))
    return regime_map_csv(rows), 0


def _cmd_gdof_sweep(cfg, args) -> tuple[str, int]:
    report = gdof_dominance_sweep(args.samples, seed=args.seed)
    return _json_text(report), 0 if report["ok"] else 2


_HANDLERS = {
    "classify": _cmd_classify,
    "det-rates": _cmd_det_rates,
    "det-capacity": _cmd_det_capacity,
    "det-simulate": _cmd_det_simulate,
    "det-verify": _cmd_det_verify,
    "entropy-oracle": _cmd_entropy_oracle,
    "gauss-rates": _cmd_gauss_rates,
    "gauss-bounds": _cmd_gauss_bounds,
    "gdof": _cmd_gdof,
    "gap-sweep": _cmd_gap_sweep,
    "regime-map": _cmd_regime_map,
    "gdof-sweep": _cmd_gdof_sweep,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pimac",
        description=(
            "Sum-rate analysis of a point-to-point link interfering with a "
            "2-user MAC. Channels are comma-separated sextuples in the order "
            "d1,c1,d2,c2,d3,c3."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str, det=False, alpha=False):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="JSON config file; flags override its values")
        p.add_argument("--out", help=f"output path (relative resolves under ${OUT_DIR_ENV})")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        if det:
            p.add_argument("--det", help="bit levels d1,c1,d2,c2,d3,c3")
        if alpha:
            p.add_argument("--alpha", help="SNR exponents d1,c1,d2,c2,d3,c3")
            p.add_argument("--rho", type=float, default=100.0, help="reference SNR (> 1)")
        return p

    p = add("classify", "regime/sub-regime label of a channel", det=True, alpha=True)
    p.add_argument("--eps", type=float, default=1e-9, help="special-line tolerance for --alpha")

    p = add("det-rates", "all deterministic rates, bounds, and capacity", det=True)
    p.add_argument("--no-power-control", action="store_true",
                   help="skip the exhaustive power-control search")

    add("det-capacity", "known sum-capacity with its source row", det=True)

    p = add("det-simulate", "bit-exact encode/channel/decode round trips", det=True)
    p.add_argument("--scheme", choices=("naive", "tdma", "iacp"), required=True)
    p.add_argument("--slot", choices=TDMA_SLOTS, help="tdma slot (default: all three)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=1)

    p = add("det-verify", "exhaustive grid check of all stated properties")
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mutate", help="deliberate formula perturbation (sensitivity demo)")

    p = add("entropy-oracle", "exact shifted-XOR entropy / entropy-difference check")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--ell1", type=int, required=True)
    p.add_argument("--ell2", type=int, required=True)
    p.add_argument("--ell3", type=int, help="when given, check H(Y_A) - H(Y_B) <= 0")
    p.add_argument("--p", type=float, default=0.5, help="per-level Bernoulli parameter")
    p.add_argument("--random-dist", action="store_true", help="seeded random product pmfs")
    p.add_argument("--seed", type=int, default=0)

    add("gauss-rates", "Gaussian naive and time-sharing rates", alpha=True)
    add("gauss-bounds", "Gaussian upper bounds", alpha=True)

    p = add("gdof", "GDoF of all schemes at an exponent vector", alpha=True)
    p.add_argument("--eps", type=float, default=1e-9)

    p = add("gap-sweep", "constant-gap audit over an SNR list", alpha=True)
    p.add_argument("--rhos", default="1e2,1e3,1e4,1e5,1e6,1e7,1e8")

    p = add("regime-map", "sub-regime map over the (d3, c3) plane")
    p.add_argument("--fixed", required=True, help="base parameters d1,c1,d2,c2")
    p.add_argument("--d3", required=True, help="range lo:hi or comma list")
    p.add_argument("--c3", required=True, help="range lo:hi or comma list")

    p = add("gdof-sweep", "sampled strict-improvement audit of the alignment schemes")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=42)

    return parser


def run(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code in (0, None) else 1
    try:
        cfg = load_config(args.config) if args.config else RunConfig()
        text, code = _HANDLERS[args.command](cfg, args)
        _write_output(text, args.out)
        return code
    except (CliError, InadmissibleChannel, InterferenceLimitViolation, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


def main() -> None:
    raise SystemExit(run())
