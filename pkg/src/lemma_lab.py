"""
Numerical checks of the auxiliary lemmas.

Each check measures a quantity, divides it by the lemma's envelope taken with
constant 1 and passes when the ratio stays within the configured slack.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Sequence

from .checks.base import DEFAULT_SLACK, LabTables, LemmaCheck
from .checks.cgg_integral import CggIntegralCheck
from .checks.chi_asym import ChiAsymCheck
from .checks.dirichlet import DirichletConsistencyCheck
from .checks.lindelof_scan import LindelofScan
from .checks.mv_local import MvLocalCheck
from .checks.series_bound import SeriesBoundCheck
from .checks.sp_integral import SpIntegralCheck
from .checks.summation_bound import SummationBoundCheck
from .checks.technical_bound import TechnicalBoundCheck
from .config import EvalConfig
from .diagnostics import CheckId, DiagnosticReport, DiagnosticSpec
from .zero_table import ZeroTable

logger = logging.getLogger(__name__)

CHECKS: Dict[CheckId, LemmaCheck] = {
    check.check_id: check
    for check in (
        SpIntegralCheck(),
        CggIntegralCheck(),
        MvLocalCheck(),
        ChiAsymCheck(),
        LindelofScan(),
        SeriesBoundCheck(),
        TechnicalBoundCheck(),
        SummationBoundCheck(),
        DirichletConsistencyCheck(),
    )
}


def bound_ratio_scan(spec: DiagnosticSpec,
                     tables: Optional[LabTables] = None,
                     cfg: Optional[EvalConfig] = None,
                     slack: float = DEFAULT_SLACK) -> DiagnosticReport:
    """
    Run the check named by spec.check_id.

    Args:
        spec: Check identifier and parameters
        tables: Shared sieve, coefficient and zero tables
        cfg: Evaluation thresholds
        slack: Pass threshold on the ratio

    Returns:
        DiagnosticReport for the check

    Raises:
        DomainError: If the lemma's preconditions are violated
    """
    cfg = cfg or EvalConfig()
    tables = tables or LabTables(cfg=cfg)
    report = CHECKS[spec.check_id].run(spec, tables, cfg, slack=slack)
    logger.debug("%s: ratio=%.4g pass=%s", spec.check_id.value, report.ratio, report.passed)
    return report


def sp_integral_check(a: float, b: float, sigma: float, u: float, m: int,
                      cfg: Optional[EvalConfig] = None, slack: float = DEFAULT_SLACK) -> DiagnosticReport:
    spec = DiagnosticSpec(CheckId.SP_INTEGRAL, {"a": a, "b": b, "sigma": sigma, "u": u, "m": m})
    return bound_ratio_scan(spec, cfg=cfg, slack=slack)


def cgg_integral_check(c: float, T1: float, T2: float, y: float, v: float, j: int,
                       cfg: Optional[EvalConfig] = None, slack: float = DEFAULT_SLACK) -> DiagnosticReport:
    spec = DiagnosticSpec(CheckId.CGG_INTEGRAL, {"c": c, "T1": T1, "T2": T2, "y": y, "v": v, "j": j})
    return bound_ratio_scan(spec, cfg=cfg, slack=slack)


def mv_local_check(sigma: float, t: float, zeros: ZeroTable,
                   cfg: Optional[EvalConfig] = None, slack: float = DEFAULT_SLACK) -> DiagnosticReport:
    """Lemma check of zeta'/zeta against its local zero sum, using the supplied zeros."""
    cfg = cfg or EvalConfig()
    spec = DiagnosticSpec(CheckId.MV_LOCAL, {"sigma": sigma, "t": t})
    return MvLocalCheck(zeros).run(spec, LabTables(cfg=cfg), cfg, slack=slack)


def run_grid(specs: Sequence[DiagnosticSpec],
             tables: Optional[LabTables] = None,
             cfg: Optional[EvalConfig] = None,
             slack: float = DEFAULT_SLACK,
             threads: int = 1) -> List[DiagnosticReport]:
    """Run independent checks concurrently, returning reports in spec order."""
    cfg = cfg or EvalConfig()
    tables = tables or LabTables(cfg=cfg)

    def one(spec):
        return bound_ratio_scan(spec, tables, cfg, slack)

    if threads == 1 or len(specs) <= 1:
        reports = [one(spec) for spec in specs]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            reports = list(pool.map(one, specs))
    failed = [r.check_id.value for r in reports if not r.passed]
    logger.info("Ran %d lemma checks, %d outside slack %g%s", len(reports), len(failed), slack,
                f": {failed}" if failed else "")
    return reports


def default_grid() -> List[DiagnosticSpec]:
    """A desk-scale configuration of every check."""
    two_pi = 2 * math.pi
    return [
        DiagnosticSpec(CheckId.SP_INTEGRAL, {"a": 100, "b": 500, "sigma": 0.5, "u": 300, "m": 0}),
        DiagnosticSpec(CheckId.SP_INTEGRAL, {"a": 100, "b": 500, "sigma": 0.5, "u": 2000, "m": 1}),
        DiagnosticSpec(CheckId.CGG_INTEGRAL, {"c": 1, "T1": 200, "T2": 350, "y": 1, "v": 275 / two_pi, "j": 0}),
        DiagnosticSpec(CheckId.CGG_INTEGRAL, {"c": 1, "T1": 200, "T2": 350, "y": 1, "v": 275 / two_pi, "j": 1}),
        DiagnosticSpec(CheckId.CGG_INTEGRAL, {"c": 1, "T1": 200, "T2": 350, "y": 1, "v": 1000 / two_pi, "j": -1}),
        DiagnosticSpec(CheckId.MV_LOCAL, {"sigma": 2, "t": 50}),
        DiagnosticSpec(CheckId.MV_LOCAL, {"sigma": 0.5, "t": 23.0}),
        DiagnosticSpec(CheckId.CHI_ASYM, {"sigma": 0.5, "t": 1e4}),
        DiagnosticSpec(CheckId.CHI_ASYM, {"sigma": 0.0, "t": 1e2}),
        DiagnosticSpec(CheckId.LINDELOF_SCAN, {"t_lo": 10, "t_hi": 1000, "samples": 32}),
        DiagnosticSpec(CheckId.SERIES_BOUND, {"x": 101, "y": 1}),
        DiagnosticSpec(CheckId.TECHNICAL_BOUND, {"x": 100, "t": 1e4}),
        DiagnosticSpec(CheckId.SUMMATION_BOUND, {"t": 1e4, "t_prime": 9000, "y": 1}),
        DiagnosticSpec(CheckId.DIRICHLET_CONSISTENCY, {"sigma": 2, "t": 0, "y": 0, "N": 10 ** 5}),
    ]
