"""
Command-line surface.

Exit codes: 0 on success, 1 on usage errors, 2 on computation errors.
"""

import argparse
import logging
import sys
from typing import Callable, Dict, Optional, Sequence

from .arithmetic import coeff_dy, lambda_sieve
from .checks.base import LabTables
from .complex_eval import EvalPoint, chi, hardy_z, logderiv_zeta, zeta, zeta_prime
from .config import CACHE_DIR_ENV, RunConfig
from .diagnostics import CheckId, DiagnosticSpec
from .errors import CacheMiss, ZetaLabError
from .lemma_lab import default_grid, run_grid
from .prime_window import find_witness_prime, theorem2_prime_range
from .reports import ReportWriter, emit_report
from .visualizations import ResidualVisualizer
from .zero_io import ZeroCache, load_zero_table
from .zero_locator import ZeroLocator, count_zeros_rvm, find_zeros
from .zero_sum import ExperimentSpec, ZeroSumExperiment
from .zero_table import ZeroTable

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s [%(levelname)s] %(name)s: %(message)s"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that exits with status 1 on usage errors."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=str, default=None, help="JSON config file.")
    common.add_argument("--threads", type=int, default=None, help="Worker threads.")
    common.add_argument("--cache-dir", type=str, default=None,
                        help=f"Zero-table cache directory (default: ${CACHE_DIR_ENV}).")
    common.add_argument("--format", choices=("csv", "json"), default=None, help="Report format.")
    common.add_argument("--out", type=str, default=None, help="Write the report here instead of stdout.")
    common.add_argument("--verbose", action="store_true", help="Debug logging.")
    return common


def _x_value(text: str):
    if text == "auto":
        return text
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"x must be a prime or 'auto', got {text!r}")


def _param(text: str):
    key, sep, value = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected key=value, got {text!r}")
    try:
        return key, float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"parameter {key} needs a number, got {value!r}")


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="zeta-gap-lab",
                     description="Zeros of zeta, shifted zero sums, witness primes and lemma checks.")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    zeta_cmd = commands.add_parser("zeta", help="Evaluate zeta-side functions.")
    zeta_sub = zeta_cmd.add_subparsers(dest="action", required=True, parser_class=_Parser)
    ev = zeta_sub.add_parser("eval", parents=[common], help="Evaluate at sigma + it.")
    ev.add_argument("--sigma", type=float, required=True)
    ev.add_argument("--t", type=float, required=True)
    ev.add_argument("--what", choices=("zeta", "zeta_prime", "hardy_z", "chi", "logderiv"), default="zeta")

    zeros_cmd = commands.add_parser("zeros", help="Find, import or count zeros.")
    zeros_sub = zeros_cmd.add_subparsers(dest="action", required=True, parser_class=_Parser)
    find = zeros_sub.add_parser("find", parents=[common], help="Locate zeros in [from, to].")
    find.add_argument("--from", dest="t_lo", type=float, required=True)
    find.add_argument("--to", dest="t_hi", type=float, required=True)
    imp = zeros_sub.add_parser("import", parents=[common], help="Load and validate a zero file.")
    imp.add_argument("--file", type=str, required=True)
    imp.add_argument("--from", dest="t_lo", type=float, required=True)
    imp.add_argument("--to", dest="t_hi", type=float, required=True)
    count = zeros_sub.add_parser("count", parents=[common], help="N(T) by Riemann-von Mangoldt and by Gram points.")
    count.add_argument("--t", type=float, required=True)

    coeffs_cmd = commands.add_parser("coeffs", help="Twisted coefficients D_y(n).")
    coeffs_sub = coeffs_cmd.add_subparsers(dest="action", required=True, parser_class=_Parser)
    table = coeffs_sub.add_parser("table", parents=[common], help="D_y(n) for n <= N as CSV.")
    table.add_argument("--y", type=float, required=True)
    table.add_argument("--n", type=int, required=True)

    prime_cmd = commands.add_parser("prime", help="Witness primes and prime ranges.")
    prime_sub = prime_cmd.add_subparsers(dest="action", required=True, parser_class=_Parser)
    wit = prime_sub.add_parser("witness", parents=[common], help="Smallest witness prime above t.")
    wit.add_argument("--y", type=float, required=True)
    wit.add_argument("--t", type=float, required=True)
    rng = prime_sub.add_parser("range", parents=[common], help="Primes admissible as x at height T.")
    rng.add_argument("--T", dest="T_bold", type=float, required=True)
    rng.add_argument("--y", type=float, required=True)
    rng.add_argument("--theta", type=float, default=2.0)

    zs_cmd = commands.add_parser("zerosum", help="Shifted zero-sum experiment.")
    zs_sub = zs_cmd.add_subparsers(dest="action", required=True, parser_class=_Parser)
    run_p = zs_sub.add_parser("run", parents=[common], help="One zero sum over (T1, T2).")
    run_p.add_argument("--t1", type=float, required=True)
    run_p.add_argument("--t2", type=float, required=True)
    run_p.add_argument("--y", type=float, required=True)
    run_p.add_argument("--x", type=_x_value, default="auto")
    run_p.add_argument("--a", type=float, default=1.0)
    run_p.add_argument("--c", type=float, default=1.0)
    run_p.add_argument("--theta", type=float, default=2.0)
    run_p.add_argument("--relaxed", action="store_true", help="Allow T2 >= 2*T1 (recorded as an advisory).")
    sweep = zs_sub.add_parser("sweep", parents=[common], help="Zero sums over a list of heights.")
    sweep.add_argument("--T", dest="T_list", type=float, nargs="+", required=True)
    sweep.add_argument("--y", type=float, required=True)
    sweep.add_argument("--a", type=float, default=1.0)
    sweep.add_argument("--theta", type=float, default=2.0)
    sweep.add_argument("--delta-fraction", type=float, default=0.05)
    sweep.add_argument("--svg", type=str, default=None, help="Residual-trend plot path.")

    w1 = commands.add_parser("witness1", parents=[common], help="Nonvanishing witness in [T, T(1+eps)].")
    w1.add_argument("--T", dest="T", type=float, required=True)
    w1.add_argument("--y", type=float, required=True)
    w1.add_argument("--C", dest="C", type=float, default=1.0)

    n0y = commands.add_parser("n0y", parents=[common], help="Count zeros up to T with zeta(rho + iy) != 0.")
    n0y.add_argument("--T", dest="T", type=float, required=True)
    n0y.add_argument("--y", type=float, required=True)

    lemma = commands.add_parser("lemma", parents=[common], help="Run a lemma check or the default grid.")
    lemma.add_argument("check", choices=[c.value for c in CheckId] + ["all"])
    lemma.add_argument("--param", type=_param, action="append", default=[], help="key=value, repeatable.")
    return parser


def _load_config(args: argparse.Namespace) -> RunConfig:
    """Config file values overridden by flags."""
    try:
        cfg = RunConfig.from_json(args.config) if args.config else RunConfig.from_dict({})
        overrides = {}
        if args.threads is not None:
            overrides["threads"] = args.threads
        if args.cache_dir is not None:
            overrides["zero_cache_dir"] = args.cache_dir
        if args.format is not None:
            overrides["output_format"] = args.format
        if overrides:
            cfg = RunConfig.from_dict({**cfg.to_dict(), **overrides})
    except (ValueError, FileNotFoundError) as exc:
        raise UsageError(str(exc)) from exc
    return cfg


def _zero_provider(cfg: RunConfig) -> Callable[[float, float], ZeroTable]:
    """find_zeros behind the optional on-disk cache."""
    cache = ZeroCache(cfg.zero_cache_dir) if cfg.zero_cache_dir else None

    def provide(lo: float, hi: float) -> ZeroTable:
        if cache is not None:
            try:
                return cache.load(lo, hi, cfg.eval)
            except CacheMiss:
                logger.debug("Cache miss for [%g, %g]", lo, hi)
        table = find_zeros(lo, hi, cfg.eval, threads=cfg.threads, zero_tolerance=cfg.zero_tolerance)
        if cache is not None and table.complete:
            cache.store(table)
        return table

    return provide


def _cmd_zeta(args, cfg: RunConfig) -> None:
    p = EvalPoint(args.sigma, args.t)
    if args.what == "chi":
        factors = chi(p)
        print(f"chi={factors.chi_value!r} theta={factors.theta_value!r} psi={factors.digamma_value!r}")
        return
    if args.what == "hardy_z":
        fv = hardy_z(args.t, cfg.eval)
    elif args.what == "zeta_prime":
        fv = zeta_prime(p, cfg.eval)
    elif args.what == "logderiv":
        zeros = None
        if p.sigma <= 1.25:
            zeros = _zero_provider(cfg)(max(10.0, abs(p.t) - 2), max(10.0, abs(p.t) + 2))
        fv = logderiv_zeta(p, zeros, cfg.eval)
    else:
        fv = zeta(p, cfg.eval)
    print(f"value={fv.value!r} abs_error={fv.abs_error_estimate:.3g} method={fv.method_used.value}")


def _cmd_zeros(args, cfg: RunConfig) -> None:
    if args.action == "count":
        rvm = count_zeros_rvm(args.t)
        exact = ZeroLocator(cfg.eval, cfg.zero_tolerance, cfg.threads).count_below(args.t)
        print(f"N({args.t:g}): gram={exact} rvm_main={rvm.main:.4f} rvm_rounded={rvm.rounded}")
        return
    if args.action == "import":
        table = load_zero_table(args.file, args.t_lo, args.t_hi, cfg.eval)
    else:
        table = _zero_provider(cfg)(args.t_lo, args.t_hi)
    if not table.complete:
        logger.warning("Zero table on [%g, %g] is not verified complete", table.t_min, table.t_max)
    lines = "".join(f"{z.gamma:.12f}\n" for z in table)
    if args.out:
        with open(args.out, "w", encoding="ascii", newline="\n") as fh:
            fh.write(lines)
    else:
        sys.stdout.write(lines)


def _cmd_coeffs(args, cfg: RunConfig) -> None:
    if args.n < 1:
        raise UsageError("--n must be positive")
    coeffs = coeff_dy(args.y, args.n, lambda_sieve(args.n))
    if args.out:
        coeffs.to_csv(args.out)
    else:
        coeffs.to_frame().to_csv(sys.stdout, index=False, float_format="%.17g")


def _cmd_prime(args, cfg: RunConfig) -> None:
    if args.action == "witness":
        w = find_witness_prime(args.y, args.t)
        print(f"p={w.p} deviation={w.deviation:.6f}")
        return
    pr = theorem2_prime_range(args.T_bold, args.y, args.theta, threads=cfg.threads)
    print(f"range=({pr.lo:.6g}, {pr.hi:.6g}) L={pr.scriptL:.6g} primes={len(pr.primes)} smallest={pr.primes[0]}")


def _cmd_zerosum(args, cfg: RunConfig) -> None:
    experiment = ZeroSumExperiment(cfg.eval, threads=cfg.threads, zero_provider=_zero_provider(cfg))
    if args.action == "run":
        x_source = "given"
        x = args.x
        if x == "auto":
            x, x_source = experiment.select_x((args.t1 + args.t2) / 2, args.y, args.theta)
        spec = ExperimentSpec(T1=args.t1, T2=args.t2, y=args.y, x=x, A=args.a, C=args.c,
                              Theta=args.theta, strict=not args.relaxed)
        for note in spec.advisories:
            logger.warning("Advisory: %s", note)
        report = experiment.run(spec, experiment.zero_provider(spec.T1, spec.T2), x_source=x_source)
        emit_report([report], cfg.output_format, args.out)
        return

    reports = experiment.sweep(args.T_list, args.y, args.a, args.theta, args.delta_fraction)
    emit_report(reports, cfg.output_format, args.out)
    if args.out:
        ReportWriter.print_sweep_summary(reports)
    if args.svg:
        ResidualVisualizer.create_trend_svg([reports], args.svg)


def _cmd_witness1(args, cfg: RunConfig) -> None:
    experiment = ZeroSumExperiment(cfg.eval, threads=cfg.threads, zero_provider=_zero_provider(cfg))
    result = experiment.witness(args.T, args.y, args.C, cfg.nonvanish_threshold)
    print(f"window=[{result.window[0]:.6f}, {result.window[1]:.6f}] eps={result.epsilon:.6g} "
          f"zeros={len(result.zeros_in_window)}")
    for gamma, magnitude in result.shifted_values:
        print(f"  gamma={gamma:.12f} |zeta(rho+iy)|={magnitude:.6g}")
    if result.witness_gamma is None:
        print("witness=none")
    else:
        print(f"witness={result.witness_gamma:.12f}")


def _cmd_n0y(args, cfg: RunConfig) -> None:
    zeros = _zero_provider(cfg)(10.0, args.T)
    result = ZeroSumExperiment(cfg.eval).n0y(args.T, args.y, cfg.nonvanish_threshold, zeros)
    print(f"total={result.total} nonvanishing={result.nonvanishing} flagged={len(result.flagged)}")
    for gamma in result.flagged:
        print(f"  flagged gamma={gamma:.12f}")


def _cmd_lemma(args, cfg: RunConfig) -> None:
    params: Dict[str, float] = dict(args.param)
    if args.check == "all":
        if params:
            raise UsageError("lemma all takes no --param")
        specs = default_grid()
    else:
        try:
            specs = [DiagnosticSpec(CheckId(args.check), params)]
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    tables = LabTables(cfg=cfg.eval, zero_provider=_zero_provider(cfg))
    reports = run_grid(specs, tables, cfg.eval, slack=cfg.slack, threads=cfg.threads)
    emit_report(reports, args.format or "json", args.out)


_HANDLERS = {
    "zeta": _cmd_zeta,
    "zeros": _cmd_zeros,
    "coeffs": _cmd_coeffs,
    "prime": _cmd_prime,
    "zerosum": _cmd_zerosum,
    "witness1": _cmd_witness1,
    "n0y": _cmd_n0y,
    "lemma": _cmd_lemma,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse argv and execute one subcommand.

    Returns:
        0 on success, 1 on usage errors, 2 on computation errors
    """
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1

    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO, format=LOG_FORMAT)
    try:
        cfg = _load_config(args)
        _HANDLERS[args.command](args, cfg)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except ZetaLabError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        parser.print_usage(sys.stderr)
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))
