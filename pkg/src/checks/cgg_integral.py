"""
Chi-Gamma-Gamma integral:

    (1/2pi) int_{T1}^{T2} chi(1 - c + i(tau + y)) f_j(c - i tau) v^(-c + i tau) dtau

with f_0 = 1, f_1(s) = psi(s/2) and f_-1(s) = psi((1-s)/2). Its stationary point sits
at tau + y = 2 pi v.
"""

import math
from typing import Mapping, Tuple

import numpy as np
from scipy import special

from ..complex_eval import log_chi
from ..config import EvalConfig
from ..diagnostics import CheckId
from ..errors import DomainError
from ..quadrature import oscillatory_integral
from .base import LabTables, LemmaCheck
from .sp_integral import indicator


def _f(j: int, s: np.ndarray) -> np.ndarray:
    if j == 0:
        return np.ones_like(s)
    if j == 1:
        return special.psi(s / 2)
    return special.psi((1 - s) / 2)


def _g(j: int, v: float) -> complex:
    if j == 0:
        return 1.0 + 0j
    return complex(math.log(math.pi * v), -j * math.pi / 2)


def cgg_main_term(T1: float, T2: float, y: float, v: float, j: int) -> complex:
    """v^(-iy) e^(2 pi i v) g_j(v) when T1 + y < 2 pi v <= T2 + y, else 0."""
    if not indicator(T1 + y, T2 + y, 2 * math.pi * v):
        return 0j
    return complex(np.exp(1j * (2 * math.pi * v - y * math.log(v)))) * _g(j, v)


def cgg_envelope(c: float, T1: float, T2: float, y: float, v: float, j: int) -> float:
    a, b, u = T1 + y, T2 + y, 2 * math.pi * v
    shape = (a ** (c - 0.5)
             + a ** (c + 0.5) / (abs(a - u) + math.sqrt(a))
             + b ** (c + 0.5) / (abs(b - u) + math.sqrt(b)))
    return math.log(a) ** abs(j) / v ** c * shape


class CggIntegralCheck(LemmaCheck):
    check_id = CheckId.CGG_INTEGRAL

    def measure(self, params: Mapping[str, float], tables: LabTables, cfg: EvalConfig) -> Tuple[float, float, str]:
        c, T1, T2, y, v = (float(params[k]) for k in ("c", "T1", "T2", "y", "v"))
        j = int(params["j"])
        if not (2 * T1 > T2 > T1 >= 10 * (abs(y) + 1)):
            raise DomainError(f"need 2*T1 > T2 > T1 >= 10(|y|+1), got T1={T1}, T2={T2}, y={y}")
        if not 0.5 <= c <= 10:
            raise DomainError(f"c must lie in [1/2, 10], got {c}")
        if not v > 0:
            raise DomainError("v must be positive")
        if j not in (-1, 0, 1):
            raise DomainError("j must be -1, 0 or 1")

        log_v = math.log(v)

        def integrand(tau):
            chi_part = np.exp(log_chi(1 - c + 1j * (tau + y)))
            return chi_part * _f(j, c - 1j * tau) * np.exp((-c + 1j * tau) * log_v) / (2 * math.pi)

        two_pi_v = 2 * math.pi * v
        result = oscillatory_integral(integrand, T1, T2,
                                      lambda tau: abs(math.log((tau + y) / two_pi_v)),
                                      tol=max(cfg.target_abs_error, 1e-10))
        main = cgg_main_term(T1, T2, y, v, j)
        observed = abs(result.value - main)
        bound = cgg_envelope(c, T1, T2, y, v, j)
        details = f"integral={result.value:.10g} main={main:.10g} panels={result.panels}"
        return observed, bound, details
