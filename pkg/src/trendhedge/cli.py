"""Command-line driver: ``generate``, ``trend``, ``hedge`` and ``jumps``.

Exit codes: 0 success, 1 runtime or domain error, 2 usage error.
Settings come from command-line flags, then from an optional ``--config``
file of ``key=value`` lines (keys are the long flag names), then defaults.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .hedge import (CarryParams, HedgeError, HedgePath, bsm_price, delta_path,
                    delta_path_carry, init_hedge, replication_report)
from .jump import JumpConfig, PolicyConfig, forecast_jumps, shape_delta
from .plot import write_svg
from .rates import RatePath
from .series import (PriceSeries, SeriesFormatError, SynthSpec, generate, load_csv,
                     write_csv, write_table)
from .trend import TrendConfig, TrendEstimate, estimate_trend


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    underlying: Path | None
    option: Path | None
    rate: float
    rates: Path | None
    trend: TrendConfig
    jump: JumpConfig
    policy: PolicyConfig
    carry: CarryParams | None
    out: Path
    svg: bool = False


def read_config(path) -> dict[str, str]:
    """Parse ``key=value`` lines; ``#`` starts a comment line."""
    out: dict[str, str] = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        out[key.strip().replace("-", "_")] = value.strip()
    return out


def read_report(path) -> dict[str, str]:
    """Load ``report.txt`` (``key=value`` lines) written by ``hedge``."""
    return read_config(path)


def _add_trend_flags(p):
    p.add_argument("--window", type=int, default=20)
    p.add_argument("--degree", type=int, default=2)
    p.add_argument("--min-points", type=int, default=5)


def _add_run_flags(p):
    p.add_argument("--underlying", type=Path)
    p.add_argument("--option", type=Path)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--rate", type=float, default=0.0, help="constant annualized rate")
    g.add_argument("--rates", type=Path, help="CSV of annualized rates (date,value)")
    _add_trend_flags(p)
    p.add_argument("--out", type=Path, default=Path("out"), help="output directory")
    p.add_argument("--svg", action="store_true", default=False)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="trendhedge", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a synthetic price series")
    p.add_argument("--config", type=Path)
    p.add_argument("--n", type=int, default=252)
    p.add_argument("--s0", type=float, default=100.0)
    p.add_argument("--drift", type=float, default=0.0)
    p.add_argument("--vol", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jump", action="append", default=[], metavar="INDEX:SIZE",
                   help="multiplicative jump, e.g. 100:0.1 (repeatable)")
    p.add_argument("--dt-years", type=float, default=1.0 / 252.0)
    p.add_argument("--label", default="synthetic")
    p.add_argument("--from", dest="from_", type=Path, metavar="UNDERLYING",
                   help="mark an option on this underlying CSV instead of simulating")
    p.add_argument("--kind", choices=("call", "put"), default="call")
    p.add_argument("--strike", type=float)
    p.add_argument("--implied-vol", type=float, default=0.25)
    p.add_argument("--maturity-years", type=float)
    p.add_argument("--rate", type=float, default=0.0)
    p.add_argument("--out", type=Path, required=True, help="output CSV file")

    p = sub.add_parser("trend", help="trend, slope and residual of each input")
    p.add_argument("--config", type=Path)
    _add_run_flags(p)

    for name, help_ in (("hedge", "model-free hedge ratio backtest"),
                        ("jumps", "abrupt-change flags and shaped hedge ratio")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--config", type=Path)
        _add_run_flags(p)
        p.add_argument("--carry", type=float, metavar="Q", help="holding-cost rate")
        if name == "jumps":
            p.add_argument("--z", type=float, default=3.0)
            p.add_argument("--stat-window", type=int, default=20)
            p.add_argument("--direction-window", type=int, default=5)
            p.add_argument("--refractory", type=int, default=10)
            p.add_argument("--policy", choices=("freeze", "rate-limit", "rate_limit"),
                           default="rate-limit")
            p.add_argument("--max-step", type=float, default=0.05)
            p.add_argument("--freeze-horizon", type=int, default=5)
    return parser


def _parse(argv):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "config", None) is not None:
        # re-parse with file values as defaults so explicit flags still win
        try:
            values = read_config(args.config)
        except OSError as exc:
            parser.error(f"cannot read config: {exc}")
        except UsageError as exc:
            parser.error(str(exc))
        subparser = parser._subparsers._group_actions[0].choices[args.command]
        known = {a.dest for a in subparser._actions}
        unknown = sorted(set(values) - known)
        if unknown:
            parser.error(f"unknown config keys: {', '.join(unknown)}")
        if "from" in values:
            values["from_"] = values.pop("from")
        for action in subparser._actions:
            if action.dest in values and isinstance(action, argparse._StoreTrueAction):
                values[action.dest] = values[action.dest].lower() in ("1", "true", "yes")
            elif action.dest in values and action.dest == "jump":
                values["jump"] = [j.strip() for j in values["jump"].split(";") if j.strip()]
        subparser.set_defaults(**values)
        args = parser.parse_args(argv)
    return parser, args


def _run_config(args) -> RunConfig:
    try:
        trend = TrendConfig(args.window, args.degree, args.min_points)
        jump = JumpConfig(getattr(args, "stat_window", 20), getattr(args, "z", 3.0),
                          getattr(args, "direction_window", 5), getattr(args, "refractory", 10))
        policy = PolicyConfig(getattr(args, "policy", "rate_limit"),
                              getattr(args, "freeze_horizon", 5), getattr(args, "max_step", 0.05))
        carry = CarryParams(args.carry) if getattr(args, "carry", None) is not None else None
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return RunConfig(args.underlying, args.option, args.rate, args.rates, trend, jump,
                     policy, carry, args.out, args.svg)


def _load_pair(run: RunConfig) -> tuple[PriceSeries, PriceSeries, RatePath]:
    if run.underlying is None or run.option is None:
        raise UsageError("both --underlying and --option are required")
    s = load_csv(run.underlying)
    v = load_csv(run.option)
    if len(s) != len(v):
        raise HedgeError(f"length mismatch: underlying has {len(s)} samples, option has {len(v)}")
    if run.rates is not None:
        rs = load_rates(run.rates, s.dt_years)
        if len(rs) != len(s):
            raise HedgeError(f"length mismatch: underlying has {len(s)} samples, "
                             f"rates have {len(rs)}")
    else:
        rs = RatePath.constant(run.rate, len(s), s.dt_years)
    return s, v, rs


def load_rates(path, dt_years: float) -> RatePath:
    """Rate CSV in the series schema; values may be zero or negative."""
    rows = [ln for ln in Path(path).read_text(encoding="utf-8").splitlines()
            if ln.strip() and not ln.startswith("#")]
    if not rows or rows[0].strip() != "date,value":
        raise SeriesFormatError(f"{path}: missing 'date,value' header")
    vals = []
    for row in rows[1:]:
        parts = row.split(",")
        try:
            vals.append(float(parts[1]))
        except (IndexError, ValueError):
            raise SeriesFormatError(f"{path}: malformed rate row {row!r}") from None
    if not vals:
        raise SeriesFormatError("empty series")
    return RatePath(np.array(vals), dt_years)


def _write_trend(out: Path, name: str, series: PriceSeries, est: TrendEstimate, svg: bool):
    write_table(out / f"trend_{name}.csv", {
        "index": range(len(series)),
        "raw": series.values,
        "trend": est.trend,
        "deriv": est.deriv,
        "residual": est.residual,
    })
    if svg:
        write_svg(out / f"trend_{name}.svg", {"raw": series.values, "trend": est.trend},
                  title=f"{series.label}: raw and trend")


def _hedge(run: RunConfig, s, v, rs) -> tuple[TrendEstimate, TrendEstimate, HedgePath]:
    st = estimate_trend(s, run.trend)
    vt = estimate_trend(v, run.trend)
    init = init_hedge(vt, st, float(rs.rates[0]))
    if run.carry is not None:
        path = delta_path_carry(vt, st, rs, run.carry, init)
    else:
        path = delta_path(vt, st, rs, init)
    return st, vt, path


def cmd_generate(args) -> int:
    if args.from_ is not None:
        if args.strike is None or args.maturity_years is None:
            raise UsageError("--from needs --strike and --maturity-years")
        s = load_csv(args.from_)
        horizon = (len(s) - 1) * s.dt_years
        if not args.maturity_years > horizon:
            raise UsageError(f"--maturity-years must exceed the series span {horizon:.6g}")
        try:
            prices = [bsm_price(x, args.strike, args.implied_vol, args.rate,
                                args.maturity_years - k * s.dt_years, args.kind)
                      for k, x in enumerate(s.values)]
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        series = PriceSeries(args.label if args.label != "synthetic" else
                             f"{args.kind}_{args.strike:g}", s.t0, np.array(prices), s.dt_years)
    else:
        try:
            jumps = []
            for item in args.jump:
                idx, _, size = item.partition(":")
                jumps.append((int(idx), float(size)))
            spec = SynthSpec(args.n, args.s0, args.drift, args.vol, tuple(jumps), args.seed,
                             args.dt_years, args.label)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        series = generate(spec)
    args.out.parent.mkdir(parents=True, exist_ok=True)
    write_csv(series, args.out)
    print(args.out)
    return 0


def cmd_trend(run: RunConfig) -> int:
    inputs = [(name, p) for name, p in (("underlying", run.underlying), ("option", run.option))
              if p is not None]
    if not inputs:
        raise UsageError("give --underlying and/or --option")
    run.out.mkdir(parents=True, exist_ok=True)
    for name, p in inputs:
        s = load_csv(p)
        _write_trend(run.out, name, s, estimate_trend(s, run.trend), run.svg)
    return 0


def cmd_hedge(run: RunConfig) -> int:
    s, v, rs = _load_pair(run)
    st, vt, path = _hedge(run, s, v, rs)
    rep = replication_report(v, s, path)
    out = run.out
    out.mkdir(parents=True, exist_ok=True)
    _write_trend(out, "underlying", s, st, run.svg)
    _write_trend(out, "option", v, vt, run.svg)
    write_table(out / "delta.csv", {
        "index": range(len(path)),
        "delta": path.delta,
        "target": path.target,
        "raw_error": rep.errors,
    })
    lines = {
        "mode": "carry" if run.carry is not None else "riskfree",
        "samples": len(s),
        "window": run.trend.window,
        "degree": run.trend.degree,
        "min_points": run.trend.min_points,
        "carry_q": run.carry.q if run.carry is not None else 0.0,
        "delta0": path.init.delta0,
        "pi0": path.init.pi0,
        "delta_min": float(path.delta.min()),
        "delta_max": float(path.delta.max()),
        "raw_error_max_abs": rep.max_abs,
        "raw_error_rms": rep.rms,
        "raw_error_terminal": rep.terminal,
    }
    (out / "report.txt").write_text(
        "".join(f"{k}={v!r}\n" if isinstance(v, float) else f"{k}={v}\n"
                for k, v in lines.items()), encoding="utf-8", newline="\n")
    if run.svg:
        write_svg(out / "delta.svg", {"delta": path.delta}, title="hedge ratio")
        write_svg(out / "rate.svg", {"rate": rs.rates}, title="risk-free rate")
    return 0


def cmd_jumps(run: RunConfig) -> int:
    s, v, rs = _load_pair(run)
    st, vt, path = _hedge(run, s, v, rs)
    forecast = forecast_jumps(s, st, run.jump)
    shaped = shape_delta(path, forecast, run.policy)
    out = run.out
    out.mkdir(parents=True, exist_ok=True)
    write_table(out / "jumps.csv", {
        "index": [e.index for e in forecast],
        "direction": [e.direction for e in forecast],
        "score": [e.score for e in forecast],
    })
    write_table(out / "delta_shaped.csv", {
        "index": range(len(path)),
        "delta": path.delta,
        "delta_shaped": shaped.delta,
    })
    if run.svg:
        marks = forecast.indices
        write_svg(out / "jumps.svg", {"underlying": s.values, "trend": st.trend},
                  title="underlying, trend and flagged abrupt changes", markers=marks)
        write_svg(out / "delta_shaped.svg",
                  {"risk-free delta": path.delta, "shaped delta": shaped.delta},
                  title=f"hedge ratio, {run.policy.policy} policy", markers=marks)
    return 0


def main(argv=None) -> int:
    parser, args = _parse(argv)
    try:
        if args.command == "generate":
            return cmd_generate(args)
        run = _run_config(args)
        return {"trend": cmd_trend, "hedge": cmd_hedge, "jumps": cmd_jumps}[args.command](run)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"trendhedge {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except (HedgeError, SeriesFormatError, ValueError, OSError) as exc:
        print(f"trendhedge {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
