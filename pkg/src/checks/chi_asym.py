"""Relative error of the Stirling main term for chi(1 - sigma + it), scaled by t."""

import math
from typing import Mapping, Tuple

import numpy as np

from ..complex_eval import log_chi
from ..config import EvalConfig
from ..diagnostics import CheckId
from ..errors import DomainError
from .base import LabTables, LemmaCheck


def log_chi_asymptotic(sigma: float, t: float) -> complex:
    """Logarithm of chi_asymptotic(sigma, t)."""
    phase = math.pi / 4 - t * math.log(t / (2 * math.pi * math.e))
    return complex((sigma - 0.5) * math.log(t / (2 * math.pi)), phase)


def chi_relative_error(sigma: float, t: float) -> float:
    """|chi(1 - sigma + it) / asymptotic - 1|, with the phase reduced mod 2pi."""
    diff = complex(log_chi(complex(1 - sigma, t))) - log_chi_asymptotic(sigma, t)
    diff = complex(diff.real, math.remainder(diff.imag, 2 * math.pi))
    return abs(complex(np.expm1(diff)))


class ChiAsymCheck(LemmaCheck):
    check_id = CheckId.CHI_ASYM

    def measure(self, params: Mapping[str, float], tables: LabTables, cfg: EvalConfig) -> Tuple[float, float, str]:
        sigma, t = float(params["sigma"]), float(params["t"])
        if not -1 <= sigma <= 2:
            raise DomainError(f"sigma must lie in [-1, 2], got {sigma}")
        if not t >= 10:
            raise DomainError(f"t must be at least 10, got {t}")
        rel = chi_relative_error(sigma, t)
        return t * rel, 1.0, f"relative_error={rel:.6g}"
