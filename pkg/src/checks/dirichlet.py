"""Partial sums of sum D_y(n) n^-s against (zeta'/zeta)(s) zeta(s + iy) for sigma >= 5/4."""

import math
from typing import Mapping, Optional, Tuple

import numpy as np

from ..arithmetic import dirichlet_tail_bound
from ..complex_eval import EvalPoint, logderiv_zeta, zeta
from ..config import EvalConfig
from ..diagnostics import CheckId, DiagnosticReport, DiagnosticSpec
from ..errors import DomainError
from .base import LabTables, LemmaCheck

MIN_SIGMA = 1.25


def dirichlet_partial_sum(s: complex, coeffs) -> complex:
    """sum over n <= limit of D_y(n) n^-s."""
    n = np.arange(1, coeffs.limit + 1, dtype=float)
    return complex((coeffs.entries[1:] * np.exp(-s * np.log(n))).sum())


class DirichletConsistencyCheck(LemmaCheck):
    """Passes only when the difference stays within tail bound plus evaluation errors."""
    check_id = CheckId.DIRICHLET_CONSISTENCY
    pass_ratio = 1.0

    def measure(self, params: Mapping[str, float], tables: LabTables, cfg: EvalConfig) -> Tuple[float, float, str]:
        sigma, t, y = float(params["sigma"]), float(params["t"]), float(params["y"])
        N = int(params["N"])
        if sigma < MIN_SIGMA:
            raise DomainError(f"sigma must be at least {MIN_SIGMA} for tail control, got {sigma}")
        if N < 1:
            raise DomainError(f"N must be positive, got {N}")

        s = complex(sigma, t)
        partial = dirichlet_partial_sum(s, tables.coefficients(y, N))
        zeros = None
        if sigma <= MIN_SIGMA:
            # zeta'/zeta on the boundary abscissa takes the strip branch
            height = abs(t)
            zeros = tables.zeros(max(10.0, height - 2), max(12.0, height + 2))
        logderiv = logderiv_zeta(EvalPoint(sigma, t), zeros, cfg)
        shifted = zeta(EvalPoint(sigma, t + y), cfg)
        target = logderiv.value * shifted.value
        eval_error = (abs(logderiv.value) * shifted.abs_error_estimate
                      + abs(shifted.value) * logderiv.abs_error_estimate)
        tail = dirichlet_tail_bound(sigma, N) if N > 1 else _full_series_bound(sigma)
        observed = abs(partial - target)
        details = f"partial={partial:.12g} product={target:.12g} tail={tail:.6g} eval_error={eval_error:.3g}"
        return observed, tail + eval_error, details


def _full_series_bound(sigma: float) -> float:
    """sum over n >= 2 of log n / n^sigma; the integral bound from 1 needs the n = 2 term added."""
    return math.log(2) / 2 ** sigma + dirichlet_tail_bound(sigma, 2)


def dirichlet_consistency(s: EvalPoint, y: float, N: int, tables: Optional[LabTables] = None,
                          cfg: Optional[EvalConfig] = None) -> DiagnosticReport:
    """
    Compare the Dirichlet series of D_y with (zeta'/zeta)(s) zeta(s + iy).

    Args:
        s: Evaluation point with sigma >= 5/4
        y: Twist
        N: Number of series terms
        tables: Shared sieve and coefficient tables
        cfg: Evaluation thresholds

    Raises:
        DomainError: If sigma is too small for tail control
    """
    cfg = cfg or EvalConfig()
    tables = tables or LabTables(cfg=cfg)
    spec = DiagnosticSpec(CheckId.DIRICHLET_CONSISTENCY, {"sigma": s.sigma, "t": s.t, "y": y, "N": N})
    return DirichletConsistencyCheck().run(spec, tables, cfg)
