"""Stationary-phase integral: int_a^b exp(-it log(t/(ue))) (t/2pi)^(sigma-1/2) (log t/2pi)^m dt."""

import math
from typing import Mapping, Tuple

import numpy as np

from ..config import EvalConfig
from ..diagnostics import CheckId
from ..errors import DomainError
from ..quadrature import oscillatory_integral
from .base import LabTables, LemmaCheck


def indicator(a: float, b: float, u: float) -> int:
    """1 if a < u <= b, else 0."""
    return 1 if a < u <= b else 0


def envelope(a: float, b: float, sigma: float, u: float) -> float:
    """a^(sigma-1/2) + a^(sigma+1/2)/(|a-u| + a^(1/2)) + b^(sigma+1/2)/(|b-u| + b^(1/2))."""
    return (a ** (sigma - 0.5)
            + a ** (sigma + 0.5) / (abs(a - u) + math.sqrt(a))
            + b ** (sigma + 0.5) / (abs(b - u) + math.sqrt(b)))


def stationary_main_term(a: float, b: float, sigma: float, u: float, m: int) -> complex:
    """(2pi)^(1-sigma) u^sigma e^{i(u - pi/4)} (log u/2pi)^m times the indicator."""
    if not indicator(a, b, u):
        return 0j
    return ((2 * math.pi) ** (1 - sigma) * u ** sigma * complex(np.exp(1j * (u - math.pi / 4)))
            * math.log(u / (2 * math.pi)) ** m)


class SpIntegralCheck(LemmaCheck):
    check_id = CheckId.SP_INTEGRAL

    def measure(self, params: Mapping[str, float], tables: LabTables, cfg: EvalConfig) -> Tuple[float, float, str]:
        a, b, sigma, u = (float(params[k]) for k in ("a", "b", "sigma", "u"))
        m = int(params["m"])
        if not 10 <= a < b <= 10 * a:
            raise DomainError(f"need 10 <= a < b <= 10a, got a={a}, b={b}")
        if not 0.1 <= sigma <= 10:
            raise DomainError(f"sigma must lie in [1/10, 10], got {sigma}")
        if not u > 0:
            raise DomainError("u must be positive")
        if m not in (0, 1):
            raise DomainError("m must be 0 or 1")

        log_ue = math.log(u) + 1

        def integrand(t):
            return (np.exp(-1j * t * (np.log(t) - log_ue))
                    * (t / (2 * math.pi)) ** (sigma - 0.5)
                    * np.log(t / (2 * math.pi)) ** m)

        result = oscillatory_integral(integrand, a, b, lambda t: abs(math.log(t / u)),
                                      tol=max(cfg.target_abs_error, 1e-10))
        main = stationary_main_term(a, b, sigma, u, m)
        observed = abs(result.value - main)
        bound = envelope(a, b, sigma, u) * math.log(a) ** m
        details = f"integral={result.value:.10g} main={main:.10g} panels={result.panels}"
        return observed, bound, details
