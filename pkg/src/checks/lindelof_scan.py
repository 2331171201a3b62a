"""Empirical lambda in |zeta(s)| <= exp(lambda log t / loglog t) over a height range."""

import logging
import math
from typing import Mapping, Tuple

import numpy as np

from ..complex_eval import MAX_HEIGHT, EvalPoint, zeta
from ..config import EvalConfig
from ..diagnostics import CheckId
from ..errors import DomainError
from .base import LabTables, LemmaCheck

logger = logging.getLogger(__name__)

DEFAULT_SAMPLES = 64


def lindelof_exponent(value: complex, t: float) -> float:
    """log|zeta| loglog t / log t for one sample."""
    log_t = math.log(t)
    return math.log(max(abs(value), 1e-300)) * math.log(log_t) / log_t


class LindelofScan(LemmaCheck):
    """
    Reports the largest observed exponent; there is no pass/fail since the
    constant is never fixed.
    """
    check_id = CheckId.LINDELOF_SCAN
    informational = True

    def measure(self, params: Mapping[str, float], tables: LabTables, cfg: EvalConfig) -> Tuple[float, float, str]:
        t_lo, t_hi = float(params["t_lo"]), float(params["t_hi"])
        samples = int(params.get("samples", DEFAULT_SAMPLES))
        if not 10 <= t_lo < t_hi <= MAX_HEIGHT:
            raise DomainError(f"need 10 <= t_lo < t_hi <= {MAX_HEIGHT:g}, got [{t_lo}, {t_hi}]")
        if samples < 2:
            raise DomainError("lindelof_scan needs at least two samples")

        best, best_t = -math.inf, t_lo
        for t in np.geomspace(t_lo, t_hi, samples):
            t = float(t)
            sigma = float(params["sigma"]) if "sigma" in params else 0.5 - 1 / math.log(math.log(t))
            value = zeta(EvalPoint(sigma, t), cfg).value
            exponent = lindelof_exponent(value, t)
            if exponent > best:
                best, best_t = exponent, t
        logger.debug("Largest Lindelof exponent %.4f at t = %.6g", best, best_t)
        return max(0.0, best), 1.0, f"empirical_lambda={best:.6g} at t={best_t:.6g}"
