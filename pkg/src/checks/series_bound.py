"""sum over n != x of |D_y(n)| / (n^c |log(x/n)|) against log^2 x, with c = 1 + 1/log x."""

import math
from typing import Mapping, Tuple

import numpy as np

from ..arithmetic import dirichlet_tail_bound
from ..config import EvalConfig
from ..diagnostics import CheckId
from ..errors import DomainError
from .base import LabTables, LemmaCheck

DEFAULT_CUTOFF = 10 ** 6


class SeriesBoundCheck(LemmaCheck):
    check_id = CheckId.SERIES_BOUND

    def measure(self, params: Mapping[str, float], tables: LabTables, cfg: EvalConfig) -> Tuple[float, float, str]:
        x, y = float(params["x"]), float(params["y"])
        cutoff = int(params.get("cutoff", DEFAULT_CUTOFF))
        if not x >= 10:
            raise DomainError(f"x must be at least 10, got {x}")
        if not cutoff > 2 * x:
            raise DomainError(f"cutoff {cutoff} must exceed 2x")
        c = float(params.get("c", 1 + 1 / math.log(x)))
        if not c > 1:
            raise DomainError(f"c must exceed 1, got {c}")

        coeffs = tables.coefficients(y, cutoff)
        n = np.arange(1, cutoff + 1, dtype=float)
        keep = n != x
        magnitudes = np.abs(coeffs.entries[1:])[keep]
        n = n[keep]
        partial = float((magnitudes / (n ** c * np.abs(np.log(x / n)))).sum())
        # beyond the cutoff |log(x/n)| >= log(cutoff/x) and |D_y(n)| <= log n
        tail = dirichlet_tail_bound(c, cutoff) / math.log(cutoff / x)
        details = f"partial={partial:.10g} tail={tail:.6g} c={c:.10g}"
        return partial + tail, math.log(x) ** 2, details
