"""sum over n >= 2 of log n / (n^c (|t - 2 pi n x| + t^(1/2))) against (x + t^(1/2) log t) log t / t^(c+1/2)."""

import math
from typing import Mapping, Tuple

import numpy as np

from ..arithmetic import dirichlet_tail_bound
from ..config import EvalConfig
from ..diagnostics import CheckId
from ..errors import DomainError
from .base import LabTables, LemmaCheck

DEFAULT_CUTOFF = 10 ** 6


def technical_rhs(x: float, t: float, c: float) -> float:
    log_t = math.log(t)
    return (x + math.sqrt(t) * log_t) * log_t / t ** (c + 0.5)


class TechnicalBoundCheck(LemmaCheck):
    check_id = CheckId.TECHNICAL_BOUND

    def measure(self, params: Mapping[str, float], tables: LabTables, cfg: EvalConfig) -> Tuple[float, float, str]:
        x, t = float(params["x"]), float(params["t"])
        if not t >= 10 * x >= 100:
            raise DomainError(f"need t >= 10x >= 100, got x={x}, t={t}")
        c = 1 + 1 / math.log(x)
        # past t/(pi x) each denominator exceeds pi n x
        cutoff = max(int(params.get("cutoff", DEFAULT_CUTOFF)), math.ceil(t / (math.pi * x)) + 1)

        n = np.arange(2, cutoff + 1, dtype=float)
        terms = np.log(n) / (n ** c * (np.abs(t - 2 * math.pi * n * x) + math.sqrt(t)))
        partial = float(terms.sum())
        tail = dirichlet_tail_bound(c + 1, cutoff) / (math.pi * x)
        details = f"partial={partial:.10g} tail={tail:.6g} cutoff={cutoff}"
        return partial + tail, technical_rhs(x, t, c), details
