"""Command-line entry point: figure series, sweeps, auction reports and validation.

Exit codes: 0 success, 1 usage or configuration error, 2 validation failure.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import io
import sys
from dataclasses import replace

import numpy as np

from . import pricing
from .auction import crossover_alpha, fair_reserve, settle
from .model import ConfigurationError, DomainError, Phase
from .oracles import GridSpec, McConfig
from .scenario import PRESETS, Scenario, apply_overrides, parse_pairs, preset, read_scenario_file
from .validation import run_validation

SERIES_COLUMNS = ("t", "p_i_star", "p_j_star", "q_i", "q_j", "phase")
SWEEP_VALUE_COLUMNS = ("r_A", "r_B", "r_gain", "b_i_star", "pi_i", "pi_j", "rho_gain", "valid", "reason")
AUCTION_COLUMNS = ("b_i_star", "b_j_star", "winner", "pi_i", "pi_j", "rho_gain", "crossover_alpha", "fair_c_A")


def fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, str):
        return x
    return format(float(x), ".12g")


def series_rows(scenario: Scenario):
    market = scenario.market
    times = list(np.linspace(0.0, market.t2, scenario.time_grid))
    if market.t1 not in times:
        times.append(market.t1)
        times.sort()
    for t in times:
        t = float(t)
        p = pricing.eq_prices(market, t)
        q = pricing.eq_shares(market, t)
        yield (t, p.p_i, p.p_j, q.q_i, q.q_j, market.phase(t).value)
        if t == market.t1:
            # right limit at t1 so the price drop shows up in the data
            p = pricing.price_path(market, Phase.SYMMETRIC)(t)
            x = market.lead
            yield (t, p.p_i, p.p_j, 0.5 + x / 18, 0.5 - x / 18, Phase.SYMMETRIC.value)


def _with_axis(scenario: Scenario, var: str, value: float) -> Scenario:
    if var in ("eta", "t1"):
        return replace(scenario, market=replace(scenario.market, **{var: value}))
    return replace(scenario, auction=replace(scenario.auction, **{var: value}))


def sweep_rows(scenario: Scenario):
    if scenario.sweep is None:
        raise ConfigurationError("sweep needs a sweep axis (set sweep = eta|t1|alpha_i|c_A)")
    for value in scenario.sweep.values():
        value = float(value)
        try:
            point = _with_axis(scenario, scenario.sweep.var, value)
        except DomainError as exc:
            yield (value, None, None, None, None, None, None, None, "0", str(exc))
            continue
        rep = pricing.revenues(point.market)
        try:
            out = settle(point.market, point.auction)
        except ConfigurationError as exc:
            yield (value, rep.r_A, rep.r_B, rep.r_gain, None, None, None, None, "0", str(exc))
            continue
        reason = "" if out.rho_gain is not None else "profit of block B is zero"
        yield (value, rep.r_A, rep.r_B, rep.r_gain, out.b_i, out.pi_i, out.pi_j, out.rho_gain,
               "1" if out.rho_gain is not None else "0", reason)


def write_csv(stream, header, rows) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) for v in row])


def auction_report(scenario: Scenario) -> tuple[str, tuple]:
    market, auction = scenario.market, scenario.auction
    out = settle(market, auction)
    alpha_star = crossover_alpha(market, auction)
    c_star = fair_reserve(market, auction, auction.alpha_i)
    rep = pricing.revenues(market)
    lines = [
        f"r_A = {rep.r_A:.6f}   r_B = {rep.r_B:.6f}   r_gain = {rep.r_gain:.6f}",
        f"optimal bids: b_i* = {out.b_i:.6f}   b_j* = {out.b_j:.6f}",
        f"winner of block A: {out.winner.value}",
        f"profits: pi_i = {out.pi_i:.6f}   pi_j = {out.pi_j:.6f}",
        "profit gain: " + ("undefined (pi_j = 0)" if out.rho_gain is None else f"{out.rho_gain:.6f}"),
        "crossover alpha*: " + ("none on [0, 1]" if alpha_star is None else f"{alpha_star:.6f}"),
        f"fair c_A at alpha_i={auction.alpha_i:g}: " + ("none in [c_B, r_A)" if c_star is None else f"{c_star:.6f}"),
    ]
    row = (out.b_i, out.b_j, out.winner.value, out.pi_i, out.pi_j, out.rho_gain, alpha_star, c_star)
    return "\n".join(lines), row


def cmd_series(scenario: Scenario) -> str:
    if scenario.sweep is not None:
        raise ConfigurationError("series takes no sweep axis; use the sweep subcommand")
    buf = io.StringIO()
    write_csv(buf, SERIES_COLUMNS, series_rows(scenario))
    return buf.getvalue()


def cmd_sweep(scenario: Scenario) -> str:
    if scenario.sweep is None:
        raise ConfigurationError("sweep needs a sweep axis (set sweep = eta|t1|alpha_i|c_A)")
    buf = io.StringIO()
    write_csv(buf, (scenario.sweep.var,) + SWEEP_VALUE_COLUMNS, sweep_rows(scenario))
    return buf.getvalue()


def cmd_auction(scenario: Scenario) -> tuple[str, str]:
    """Human-readable report and the matching single-row CSV."""
    text, row = auction_report(scenario)
    buf = io.StringIO()
    write_csv(buf, AUCTION_COLUMNS, [row])
    return text, buf.getvalue()


def cmd_validate(scenario: Scenario, mc: McConfig = McConfig(), grid: GridSpec = GridSpec()):
    """All checks plus the exit code they imply."""
    checks = run_validation(scenario, mc, grid)
    return checks, 0 if all(c.passed for c in checks) else 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--scenario", metavar="PATH", help="key = value scenario file")
    common.add_argument("--preset", help="start from a built-in figure preset")
    common.add_argument("--set", metavar="KEY=VALUE", action="append", default=[],
                        help="override one scenario key; wins over file values (repeatable)")
    common.add_argument("--out", default="-", help="output path, '-' for stdout")
    common.add_argument("--seed", type=int, default=McConfig().seed)
    common.add_argument("--mc-users", type=int, default=McConfig().n_users)
    common.add_argument("--grid-step", type=float, default=GridSpec().step)
    common.add_argument("--quiet", action="store_true")

    parser = _Parser(prog="spectrum-game", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("series", parents=[common], help="equilibrium prices and shares over time")
    sub.add_parser("sweep", parents=[common], help="revenue and profit gains along a sweep axis")
    sub.add_parser("auction", parents=[common], help="bids, profits and policy levers")
    sub.add_parser("validate", parents=[common], help="check closed forms against the oracles")
    sub.add_parser("preset", parents=[common], help="list the built-in presets")
    return parser


def load_scenario(args) -> Scenario:
    base = preset(args.preset) if args.preset else Scenario()
    pairs = read_scenario_file(args.scenario) if args.scenario else {}
    pairs.update(parse_pairs(args.set))
    return apply_overrides(base, pairs)


@contextlib.contextmanager
def _open_out(path: str):
    if path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="", encoding="ascii") as fh:
            yield fh


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "preset":
            with _open_out(args.out) as fh:
                for name, (desc, _) in PRESETS.items():
                    fh.write(f"{name}\t{desc}\n")
            return 0

        scenario = load_scenario(args)
        if args.command == "series":
            text = cmd_series(scenario)
        elif args.command == "sweep":
            text = cmd_sweep(scenario)
        elif args.command == "auction":
            report, text = cmd_auction(scenario)
            if not args.quiet:
                print(report)
                if args.out == "-":
                    print()
        else:
            mc = McConfig(n_users=args.mc_users, seed=args.seed)
            checks, code = cmd_validate(scenario, mc, GridSpec(step=args.grid_step))
            n_pass = sum(c.passed for c in checks)
            with _open_out(args.out) as fh:
                for c in checks:
                    if not args.quiet or not c.passed:
                        fh.write(c.line() + "\n")
                fh.write(f"{n_pass}/{len(checks)} checks passed\n")
            return code

        with _open_out(args.out) as fh:
            fh.write(text)
        return 0
    except (ConfigurationError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
