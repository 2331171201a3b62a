"""Short sums of D_y(n) n^(iy) over t' < n <= t."""

import math
from typing import Mapping, Tuple

import numpy as np

from ..config import EvalConfig
from ..diagnostics import CheckId
from ..errors import DomainError
from .base import LabTables, LemmaCheck


def summation_envelope(t: float, t_prime: float, y: float, kappa: float) -> float:
    """
    Delta' {1/|y| + (kappa/t)^(1/2) log^2(t/kappa + |y|) + log kappa} + t/kappa + (t kappa)^(1/2) log^2 t
    with Delta' = t - t'.
    """
    delta = t - t_prime
    inner = 1 / abs(y) + math.sqrt(kappa / t) * math.log(t / kappa + abs(y)) ** 2 + math.log(kappa)
    return delta * inner + t / kappa + math.sqrt(t * kappa) * math.log(t) ** 2


class SummationBoundCheck(LemmaCheck):
    check_id = CheckId.SUMMATION_BOUND

    def measure(self, params: Mapping[str, float], tables: LabTables, cfg: EvalConfig) -> Tuple[float, float, str]:
        t, t_prime, y = float(params["t"]), float(params["t_prime"]), float(params["y"])
        if y == 0:
            raise DomainError("summation_bound needs y != 0")
        if not t > t_prime >= 10:
            raise DomainError(f"need t > t' >= 10, got t={t}, t'={t_prime}")
        kappa = float(params.get("kappa", math.sqrt(t)))
        if not math.e <= kappa <= t / math.e:
            raise DomainError(f"kappa must lie in [e, t/e], got {kappa}")

        hi, lo = int(math.floor(t)), int(math.floor(t_prime))
        coeffs = tables.coefficients(y, hi)
        n = np.arange(lo + 1, hi + 1, dtype=float)
        twisted = coeffs.entries[lo + 1: hi + 1] * np.exp(1j * y * np.log(n))
        observed = abs(complex(twisted.sum()))
        return observed, summation_envelope(t, t_prime, y, kappa), f"terms={hi - lo} kappa={kappa:.6g}"
