"""Local expansion of zeta'/zeta by the zeros with |gamma - t| < 1."""

import math
from typing import Mapping, Optional, Tuple

from ..complex_eval import EvalPoint, logderiv_zeta
from ..config import EvalConfig
from ..diagnostics import CheckId
from ..errors import DomainError, ZeroProximity
from ..zero_table import ZeroTable
from .base import LabTables, LemmaCheck

MIN_ZERO_DISTANCE = 0.05


def local_zero_sum(s: complex, zeros: ZeroTable, t: float) -> complex:
    """sum over zeros with |gamma - t| < 1 of 1/(s - rho)."""
    return sum((1 / (s - z.rho) for z in zeros.between(t - 1, t + 1)), 0j)


class MvLocalCheck(LemmaCheck):
    check_id = CheckId.MV_LOCAL

    def __init__(self, zeros: Optional[ZeroTable] = None):
        self.zeros = zeros

    def measure(self, params: Mapping[str, float], tables: LabTables, cfg: EvalConfig) -> Tuple[float, float, str]:
        sigma, t = float(params["sigma"]), float(params["t"])
        if not -1 <= sigma <= 2:
            raise DomainError(f"sigma must lie in [-1, 2], got {sigma}")
        if not t >= 10:
            raise DomainError(f"t must be at least 10, got {t}")

        zeros = self.zeros if self.zeros is not None else tables.zeros(max(10.0, t - 2), t + 2)
        s = complex(sigma, t)
        for z in zeros.between(t - 2, t + 2):
            if abs(s - z.rho) < MIN_ZERO_DISTANCE:
                raise ZeroProximity(f"s = {s} lies within {MIN_ZERO_DISTANCE} of 1/2 + i{z.gamma}", gamma=z.gamma)

        fv = logderiv_zeta(EvalPoint(sigma, t), zeros, cfg)
        local = local_zero_sum(s, zeros, t)
        observed = abs(fv.value - local)
        details = f"logderiv={fv.value:.10g} local_sum={local:.10g} method={fv.method_used.value}"
        return observed, math.log(t), details
