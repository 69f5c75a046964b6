"""Command-line front end: ``symdouble <command> ...``.

Exit codes: 0 success, 1 failed verification, 2 usage error, 3 malformed
rational, 4 parameter out of range, 5 output path not writable.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import __version__, blocks, cfbridge, dynamics, measure
from .config import ENV_PREFIX, RunConfig
from .suite import run_suite

EXIT_VERIFY_FAILED = 1
EXIT_MALFORMED = 3
EXIT_RANGE = 4
EXIT_UNWRITABLE = 5


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def parse_rational(text: str) -> Fraction:
    try:
        return dynamics.as_fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError(EXIT_MALFORMED, f"malformed rational {text!r}; expected p/q") from exc


def parse_alpha(text: str, allow_one: bool = False) -> Fraction:
    alpha = parse_rational(text)
    if not (1 < alpha <= 2 or (allow_one and alpha == 1)):
        allowed = "[1, 2]" if allow_one else "(1, 2]"
        raise CliError(EXIT_RANGE, f"alpha = {alpha} outside {allowed}")
    return alpha


def _fmt(x: Fraction) -> str:
    return f"{x} ({float(x):.15g})"


def _header(command: str, cfg: RunConfig, extra: str = "") -> list[str]:
    line = f"symdouble {__version__} {command}"
    if extra:
        line += f" {extra}"
    return [line, f"options: {cfg.echo()}"]


def _emit(text: str, cfg: RunConfig) -> None:
    if cfg.out is None:
        sys.stdout.write(text)
        return
    try:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise CliError(EXIT_UNWRITABLE, f"cannot write {cfg.out}: {exc.strerror}") from exc
    print(f"wrote {cfg.out}")


def _check_writable(cfg: RunConfig) -> None:
    # fail before any long computation
    if cfg.out is not None:
        try:
            with open(cfg.out, "a", encoding="utf-8"):
                pass
        except OSError as exc:
            raise CliError(EXIT_UNWRITABLE, f"cannot write {cfg.out}: {exc.strerror}") from exc


# -- commands ----------------------------------------------------------------


def cmd_match(args, cfg: RunConfig) -> int:
    alpha = parse_alpha(args.alpha)
    res = dynamics.matching_index(alpha)
    seq = dynamics.signed_digit_sequence(1, alpha)
    loc = blocks.locate(alpha)
    if isinstance(res, dynamics.Matched) and isinstance(loc, blocks.Interval):
        print(f"Matched m={res.m}, digits {seq}, interval {loc.block}")
    elif isinstance(res, dynamics.Matched):
        print(f"Matched m={res.m}, digits {seq}, {loc}")
    elif isinstance(loc, blocks.Boundary):
        print(f"{res}, digits {seq}, {loc}")
    else:
        print(f"{res}, digits {seq}")
    return 0


def cmd_locate(args, cfg: RunConfig) -> int:
    loc = blocks.locate(parse_alpha(args.alpha))
    print(loc)
    if isinstance(loc, blocks.Interval):
        w = loc.block.omega
        qi = cfbridge.quadratic_endpoints(cfbridge.a_of_omega(w), cfg.precision_bits)
        digits = max(cfg.precision_bits * 3 // 10 - 2, 6)
        print(f"a({w}) = {qi.a}, quadratic interval ({qi.lo_surd}, {qi.hi_surd})")
        print(f"  lower end in [{_dec(qi.lo_val[0], digits)}, {_dec(qi.lo_val[1], digits)}]")
        print(f"  upper end in [{_dec(qi.hi_val[0], digits)}, {_dec(qi.hi_val[1], digits)}]")
    return 0


def _dec(x: Fraction, digits: int) -> str:
    scaled = x.numerator * 10**digits // x.denominator
    s = str(scaled).rjust(digits + 1, "0")
    return f"{s[:-digits]}.{s[-digits:]}"


def cmd_catalog(args, cfg: RunConfig) -> int:
    max_len = args.n or cfg.max_len
    if not max_len or max_len < 2:
        raise CliError(2, "catalog needs a maximum block length >= 2")
    _check_writable(cfg)
    doc = {"header": _header("catalog", cfg, f"max_len={max_len}"), "records": blocks.catalog(max_len)}
    _emit(json.dumps(doc, indent=1) + "\n", cfg)
    return 0


def cmd_freq(args, cfg: RunConfig) -> int:
    alpha = parse_alpha(args.alpha, allow_one=True)
    rep = measure.mu_zero_report(alpha)
    print(_fmt(rep.value))
    print(f"method: {rep.method}")
    if alpha != 1 and not isinstance(rep.location, (blocks.Interval, blocks.HighRegion)):
        series = measure.density_series(alpha, cfg.depth)
        approx = series.density.integral(-dynamics.HALF, dynamics.HALF)
        print(f"series check (depth {cfg.depth}): {float(approx):.15g}, sup tail bound {float(series.tail_bound):.3g}")
    return 0


def cmd_sweep(args, cfg: RunConfig) -> int:
    grid = args.grid_pos or cfg.grid
    if (grid is None) == (cfg.max_len is None):
        raise CliError(2, "sweep needs exactly one of --grid lo:hi:step and --max-len")
    _check_writable(cfg)
    if grid is not None:
        try:
            alphas = measure.parse_grid(grid)
        except ValueError as exc:
            raise CliError(EXIT_MALFORMED, str(exc)) from exc
        for a in alphas:
            if not (1 < a <= 2 or a == 1):
                raise CliError(EXIT_RANGE, f"grid point {a} outside [1, 2]")
        records = measure.sweep(grid=alphas, birkhoff_iterations=args.birkhoff, seed=cfg.seed, mode=cfg.mode)
    else:
        records = measure.sweep(max_len=cfg.max_len, birkhoff_iterations=args.birkhoff, seed=cfg.seed, mode=cfg.mode)
    header = _header("sweep", cfg, f"birkhoff={args.birkhoff}")
    if cfg.format == "json":
        text = json.dumps({"header": header, "records": [r.as_json() for r in records]}, indent=1) + "\n"
    else:
        text = measure.records_to_csv(records, header)
    _emit(text, cfg)
    return 0


def cmd_verify(args, cfg: RunConfig) -> int:
    results = run_suite(max_len=cfg.max_len or 10, seed=cfg.seed)
    width = max(len(r.name) for r in results)
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.name.ljust(width)}  {r.detail}")
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return EXIT_VERIFY_FAILED if failed else 0


def cmd_simulate(args, cfg: RunConfig) -> int:
    alpha = parse_alpha(args.alpha, allow_one=True)
    est = measure.birkhoff_frequency(alpha, cfg.iterations, cfg.seed, cfg.mode)
    exact = measure.mu_zero(alpha)
    print(f"alpha={alpha} mode={cfg.mode} iterations={cfg.iterations} seed={cfg.seed}")
    print(f"digit-0 frequency {est:.6f}; exact {_fmt(exact)}; difference {est - float(exact):+.6f}")
    return 0


def cmd_conjecture(args, cfg: RunConfig) -> int:
    max_len = cfg.max_len or 8
    scan = measure.conjecture_scan(max_len)
    print(f"blocks up to length {max_len}: {len(scan.violations)} ordered pairs violate the ordering")
    for v in scan.violations:
        print(f"  {v.omega} < {v.omega_prime}: inf {float(v.inf_mu):.9f} < sup {float(v.sup_mu_prime):.9f}")
    print(f"largest mass: {_fmt(scan.global_max)}; reached only inside [6/5, 3/2]: {scan.max_attained_in_plateau}")
    return 0


def cmd_coverage(args, cfg: RunConfig) -> int:
    max_len = cfg.max_len or 12
    c = measure.coverage(max_len)
    print(f"coverage of (1, 3/2) by matching intervals up to length {max_len}: {float(c):.12f}")
    return 0


# -- parser ------------------------------------------------------------------


def build_parser(cfg: RunConfig) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision-bits", type=int, default=cfg.precision_bits)
    common.add_argument("--depth", type=int, default=cfg.depth, help="truncation depth of the density series")
    common.add_argument("--max-len", type=int, default=cfg.max_len, help="maximum block length")
    common.add_argument("--grid", default=cfg.grid, help="lo:hi:step with rational entries")
    common.add_argument("--seed", type=int, default=cfg.seed)
    common.add_argument("--mode", choices=["float", "exact"], default=cfg.mode)
    common.add_argument("--format", choices=["csv", "json"], default=cfg.format)
    common.add_argument("--out", default=cfg.out, help="output path (default: standard output)")
    common.add_argument("--iterations", type=int, default=cfg.iterations)

    parser = argparse.ArgumentParser(
        prog="symdouble",
        description="Matching, invariant densities and digit frequencies of symmetric doubling maps.",
        epilog=f"Every option can also be set through an environment variable {ENV_PREFIX}<OPTION>, "
        f"e.g. {ENV_PREFIX}SEED=7 or {ENV_PREFIX}MAX_LEN=12; flags (given after the command) win.",
    )
    parser.add_argument("--version", action="version", version=f"symdouble {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, alpha=False):
        p = sub.add_parser(name, help=help_, parents=[common])
        if alpha:
            p.add_argument("alpha", help="rational p/q")
        p.set_defaults(fn=fn)
        return p

    add("match", cmd_match, "matching index, digit sequence and interval", alpha=True)
    add("locate", cmd_locate, "which matching interval contains alpha", alpha=True)
    add("catalog", cmd_catalog, "JSON catalog of matching intervals").add_argument("n", type=int, nargs="?")
    add("freq", cmd_freq, "exact mass of [-1/2, 1/2]", alpha=True)
    sw = add("sweep", cmd_sweep, "frequency records over a grid or over all blocks")
    sw.add_argument("grid_pos", nargs="?", metavar="GRID")
    sw.add_argument("--birkhoff", type=int, default=0, help="also simulate this many steps per point")
    add("verify", cmd_verify, "run the invariant suite")
    add("simulate", cmd_simulate, "Birkhoff average of digit 0", alpha=True)
    add("conjecture", cmd_conjecture, "scan the ordering conjecture")
    add("coverage", cmd_coverage, "length covered by matching intervals")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    try:
        cfg = RunConfig.from_env()
    except ValueError as exc:
        print(f"error: bad {ENV_PREFIX}* variable: {exc}", file=sys.stderr)
        return 2
    parser = build_parser(cfg)
    args = parser.parse_args(argv)
    for key in ("precision_bits", "depth", "max_len", "grid", "seed", "mode", "format", "out", "iterations"):
        setattr(cfg, key, getattr(args, key))
    try:
        return args.fn(args, cfg)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except dynamics.DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RANGE


if __name__ == "__main__":
    sys.exit(main())
