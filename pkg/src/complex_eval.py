"""
Evaluation of zeta(s), Hardy's Z, the Riemann-Siegel theta, the chi-factor,
digamma and the logarithmic derivative of zeta.

Every zeta evaluation returns a FunctionValue carrying an absolute error
estimate and the method that produced it:
- Euler-Maclaurin summation for sigma >= 0
- the Riemann-Siegel formula on the critical line at large height
- reflection through zeta(s) = chi(s) zeta(1 - s) for sigma < 0
- the von Mangoldt Dirichlet series for zeta'/zeta far right of the strip
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import TYPE_CHECKING, Optional, Sequence, Tuple, Union

import numpy as np
from numpy.polynomial import Chebyshev
from scipy import special

from .arithmetic import dirichlet_tail_bound, lambda_sieve
from .config import EvalConfig
from .errors import (
    AccuracyUnreachable,
    DomainError,
    MissingZeroCoverage,
    OverflowGuard,
    PoleProximity,
    ZeroProximity,
)

if TYPE_CHECKING:
    from .zero_table import ZeroOrdinate, ZeroTable

logger = logging.getLogger(__name__)

MAX_HEIGHT = 1e7
EPS = np.finfo(float).eps
LOG_PI = math.log(math.pi)

# Gabcke's remainder constants for C_0..C_k, valid for t >= 200
_RS_REMAINDER = (0.127, 0.053, 0.011, 0.031, 0.017)
_RS_MIN_HEIGHT = 200.0

_POWER_SUM_CHUNK = 1 << 20
_DIRICHLET_MAX_TERMS = 1 << 22


class Method(Enum):
    """How a FunctionValue was computed."""
    EULER_MACLAURIN = "euler_maclaurin"
    RIEMANN_SIEGEL = "riemann_siegel"
    REFLECTION = "reflection"
    DIRICHLET_SERIES = "dirichlet_series"


@dataclass(frozen=True)
class EvalPoint:
    """A point s = sigma + i t."""
    sigma: float
    t: float

    def __post_init__(self):
        if not (math.isfinite(self.sigma) and math.isfinite(self.t)):
            raise DomainError(f"Evaluation point must be finite: ({self.sigma}, {self.t})")

    @property
    def s(self) -> complex:
        return complex(self.sigma, self.t)

    @classmethod
    def from_complex(cls, s: complex) -> "EvalPoint":
        return cls(float(s.real), float(s.imag))

    @classmethod
    def critical(cls, t: float) -> "EvalPoint":
        """Point on the critical line sigma = 1/2."""
        return cls(0.5, t)

    @classmethod
    def on_b(cls, T_bold: float, t: float) -> "EvalPoint":
        """Point on the line sigma = b = 1/2 - 1/loglog T."""
        return cls(abscissae(T_bold, 2)["b"], t)

    @classmethod
    def on_b_prime(cls, T_bold: float, t: float) -> "EvalPoint":
        """Point on the line sigma = b' = 1 - b."""
        return cls(abscissae(T_bold, 2)["b_prime"], t)

    @classmethod
    def on_c(cls, x: float, t: float) -> "EvalPoint":
        """Point on the line sigma = c = 1 + 1/log x."""
        return cls(1.0 + 1.0 / math.log(x), t)


def abscissae(T_bold: float, x: float) -> dict:
    """
    Distinguished abscissae used by the zero-sum argument.

    Args:
        T_bold: Midpoint height (T1 + T2) / 2, must exceed e
        x: Prime parameter, must be at least 2

    Returns:
        Dictionary with keys b, b_prime and c
    """
    if T_bold <= math.e or x < 2:
        raise DomainError("abscissae need T_bold > e and x >= 2")
    b = 0.5 - 1.0 / math.log(math.log(T_bold))
    return {"b": b, "b_prime": 1.0 - b, "c": 1.0 + 1.0 / math.log(x)}


@dataclass(frozen=True)
class FunctionValue:
    """A computed value with an absolute error estimate."""
    value: complex
    abs_error_estimate: float
    method_used: Method

    def __post_init__(self):
        if not self.abs_error_estimate >= 0:
            raise ValueError("abs_error_estimate must be non-negative")


@dataclass(frozen=True)
class ChiFactors:
    """chi(s), the Riemann-Siegel phase at t and psi(s)."""
    chi_value: complex
    theta_value: float
    digamma_value: complex


# ---------------------------------------------------------------------------
# Gamma-side functions
# ---------------------------------------------------------------------------

def log_chi(s: complex) -> complex:
    """log chi(s) from the symmetric form pi^(s-1/2) Gamma((1-s)/2) / Gamma(s/2)."""
    return (s - 0.5) * LOG_PI + special.loggamma((1 - s) / 2) - special.loggamma(s / 2)


def _chi_relative_error(s: complex) -> float:
    return 8 * EPS * (1 + abs(s) * math.log(2 + abs(s)))


def _chi_value(s: complex) -> complex:
    """chi(s) with the zeros at s = 0, -2, -4, ... handled exactly."""
    if s.imag == 0 and s.real <= 0 and float(s.real / 2).is_integer():
        return 0j
    return complex(np.exp(log_chi(s)))


def _theta_exact(t: float) -> float:
    """theta(t) = Im log Gamma(1/4 + it/2) - (t/2) log pi; valid for all real t."""
    return float(special.loggamma(0.25 + 0.5j * t).imag) - 0.5 * t * LOG_PI


def _theta_stirling(t: float) -> float:
    t2 = t * t
    return (0.5 * t * math.log(t / (2 * math.pi)) - 0.5 * t - math.pi / 8
            + 1 / (48 * t) + 7 / (5760 * t * t2) + 31 / (80640 * t * t2 * t2))


def theta(t: float) -> float:
    """Riemann-Siegel theta for any real t (log-Gamma form below 10)."""
    if abs(t) >= 10:
        return _theta_stirling(t) if t > 0 else -_theta_stirling(-t)
    return _theta_exact(t)


def theta_prime(t: float) -> float:
    """Derivative of the Riemann-Siegel theta, used by Newton iterations."""
    return 0.5 * float(special.psi(0.25 + 0.5j * t).real) - 0.5 * LOG_PI


def rs_theta(t: float) -> float:
    """
    Riemann-Siegel theta function by its Stirling expansion.

    Args:
        t: Height, at least 10

    Returns:
        theta(t) with exp(2i theta(t)) = 1 / chi(1/2 + it)

    Raises:
        DomainError: If t < 10
    """
    if not t >= 10:
        raise DomainError(f"rs_theta requires t >= 10, got {t}")
    return _theta_stirling(t)


def chi(p: EvalPoint) -> ChiFactors:
    """
    The functional-equation factor chi(s) = 2^s pi^(s-1) Gamma(1-s) sin(pi s/2).

    Args:
        p: Evaluation point

    Returns:
        ChiFactors with chi(s), theta(t) and psi(s)

    Raises:
        OverflowGuard: If |t| exceeds the supported height
        PoleProximity: At the poles s = 1, 3, 5, ...
    """
    if abs(p.t) > MAX_HEIGHT:
        raise OverflowGuard(f"|t| = {abs(p.t)} exceeds supported height {MAX_HEIGHT:g}")
    s = p.s
    if p.t == 0 and p.sigma >= 1 and float((p.sigma - 1) / 2).is_integer():
        raise PoleProximity(f"chi has a pole at s = {p.sigma}")
    digamma_value = complex(np.nan, np.nan)
    if not (p.t == 0 and p.sigma <= 0 and float(p.sigma).is_integer()):
        digamma_value = complex(special.psi(s))
    return ChiFactors(chi_value=_chi_value(s), theta_value=theta(p.t), digamma_value=digamma_value)


def chi_asymptotic(sigma: float, t: float) -> complex:
    """Stirling main term for chi(1 - sigma + it), t >= 1."""
    if t < 1:
        raise DomainError("chi_asymptotic requires t >= 1")
    phase = math.pi / 4 - t * math.log(t / (2 * math.pi * math.e))
    return complex(np.exp(1j * phase)) * (t / (2 * math.pi)) ** (sigma - 0.5)


def digamma(p: EvalPoint) -> complex:
    """
    Digamma function psi(s) = Gamma'(s)/Gamma(s).

    Raises:
        PoleProximity: At nonpositive integers
    """
    nearest = round(p.sigma)
    if nearest <= 0 and abs(p.s - nearest) < 1e-12:
        raise PoleProximity(f"digamma has a pole at s = {nearest}")
    return complex(special.psi(p.s))


# ---------------------------------------------------------------------------
# Euler-Maclaurin summation
# ---------------------------------------------------------------------------

@lru_cache(maxsize=8)
def _bernoulli_over_factorial(order: int) -> np.ndarray:
    """B_{2k} / (2k)! for k = 0..order."""
    b = special.bernoulli(2 * order)
    k = np.arange(order + 1)
    return b[2 * k] / special.factorial(2 * k)


def _power_sums(s: complex, upper: int, with_log: bool) -> Tuple[complex, complex, float, float]:
    """
    Sums over n < upper of n^-s and -log(n) n^-s, chunked to bound memory.

    Returns:
        (sum, derivative sum, sum of |terms|, root-sum-square of |terms|)
    """
    total = 0j
    dtotal = 0j
    abs_total = 0.0
    sq_total = 0.0
    for start in range(1, upper, _POWER_SUM_CHUNK):
        n = np.arange(start, min(start + _POWER_SUM_CHUNK, upper), dtype=float)
        logn = np.log(n)
        terms = np.exp(-s * logn)
        total += terms.sum()
        mags = np.exp(-s.real * logn)
        abs_total += float(mags.sum())
        sq_total += float((mags * mags).sum())
        if with_log:
            dtotal -= (logn * terms).sum()
    return complex(total), complex(dtotal), abs_total, math.sqrt(sq_total)


def _euler_maclaurin(s: complex, cfg: EvalConfig, derivative: bool = False):
    """
    Euler-Maclaurin evaluation of zeta(s) (and optionally zeta'(s)) for Re s >= 0.

    Returns:
        (value, error, dvalue, derror); the derivative entries are None unless requested
    """
    t = abs(s.imag)
    N = max(cfg.em_terms, math.ceil(3 * t))
    M = cfg.em_bernoulli_order
    coef = _bernoulli_over_factorial(M + 1)

    partial, dpartial, abs_sum, rss = _power_sums(s, N, derivative)
    logN = math.log(N)
    N_s = complex(np.exp(-s * logN))  # N^-s

    value = partial + N * N_s / (s - 1) + N_s / 2
    dvalue = dpartial - logN * N * N_s / (s - 1) - N * N_s / (s - 1) ** 2 - logN * N_s / 2

    prod = s  # s (s+1) ... (s+2k-2)
    dprod = 1 + 0j
    power = N_s / N  # N^(1 - s - 2k)
    for k in range(1, M + 1):
        term = coef[k] * prod * power
        value += term
        if derivative:
            dvalue += coef[k] * (dprod * power - logN * prod * power)
        q = (s + 2 * k - 1) * (s + 2 * k)
        dq = 2 * s + 4 * k - 1
        dprod = dprod * q + prod * dq
        prod *= q
        power /= N * N

    next_term = abs(coef[M + 1] * prod * power)
    truncation = next_term * abs(s + 2 * M + 1) / (s.real + 2 * M + 1)
    phase_scale = 1 + t * logN
    rounding = EPS * (abs_sum + 4 * rss * phase_scale) + 64 * EPS * (1 + abs(value))
    error = truncation + rounding
    if not derivative:
        return value, error, None, None
    derror = truncation * (logN + 2 * M) + rounding * (1 + logN)
    return value, error, dvalue, derror


# ---------------------------------------------------------------------------
# Riemann-Siegel formula
# ---------------------------------------------------------------------------

_CAUCHY_POINTS = 64
_CAUCHY_RADIUS = 0.4
_CHEBYSHEV_DEGREE = 40


def _rs_psi(z: np.ndarray) -> np.ndarray:
    """cos(2 pi (z^2 - z - 1/16)) / cos(2 pi z); entire, evaluated off the real axis."""
    return np.cos(2 * np.pi * (z * z - z - 1 / 16)) / np.cos(2 * np.pi * z)


def _rs_psi_derivatives(p: np.ndarray, order: int = 12) -> np.ndarray:
    """Derivatives 0..order of the Riemann-Siegel Psi at real points p, by Cauchy's formula."""
    k = np.arange(_CAUCHY_POINTS)
    w = _CAUCHY_RADIUS * np.exp(2j * np.pi * (k + 0.5) / _CAUCHY_POINTS)
    values = _rs_psi(p[:, None] + w[None, :])
    m = np.arange(order + 1)
    taylor = (values[:, :, None] * w[None, :, None] ** (-m)).mean(axis=1).real
    return (taylor * special.factorial(m)).T


def _rs_coefficients(p: np.ndarray) -> np.ndarray:
    d = _rs_psi_derivatives(np.atleast_1d(np.asarray(p, dtype=float)))
    pi2 = np.pi ** 2
    c0 = d[0]
    c1 = -d[3] / (96 * pi2)
    c2 = d[2] / (64 * pi2) + d[6] / (18432 * pi2 ** 2)
    c3 = -d[1] / (64 * pi2) - d[5] / (3840 * pi2 ** 2) - d[9] / (5308416 * pi2 ** 3)
    c4 = (d[0] / (128 * pi2) + 19 * d[4] / (24576 * pi2 ** 2)
          + 11 * d[8] / (5898240 * pi2 ** 3) + d[12] / (2038431744 * pi2 ** 4))
    return np.vstack([c0, c1, c2, c3, c4])


@lru_cache(maxsize=1)
def _rs_coefficient_series() -> Tuple[Chebyshev, ...]:
    """Chebyshev interpolants of C_0..C_4 on [0, 1]."""
    return tuple(
        Chebyshev.interpolate(lambda x, j=j: _rs_coefficients(x)[j], _CHEBYSHEV_DEGREE, domain=[0, 1])
        for j in range(5)
    )


def _rs_remainder_bound(t: float, terms: int) -> float:
    return _RS_REMAINDER[terms] * t ** (-(2 * terms + 3) / 4)


def _riemann_siegel_usable(t: float, cfg: EvalConfig) -> bool:
    if t < max(cfg.method_switch_height, _RS_MIN_HEIGHT):
        return False
    return _rs_remainder_bound(t, cfg.rs_correction_terms) <= 0.5 * cfg.target_abs_error


def _riemann_siegel_z(t: float, cfg: EvalConfig) -> Tuple[float, float]:
    """Z(t) by the Riemann-Siegel formula with C_0..C_k corrections."""
    a = math.sqrt(t / (2 * math.pi))
    N = int(math.floor(a))
    p = a - N
    th = _theta_stirling(t)
    n = np.arange(1, N + 1, dtype=float)
    logn = np.log(n)
    terms = np.cos(th - t * logn) / np.sqrt(n)
    main = 2 * float(terms.sum())

    series = _rs_coefficient_series()
    correction = 0.0
    for j in range(cfg.rs_correction_terms + 1):
        correction += float(series[j](p)) * a ** (-j)
    sign = 1.0 if (N - 1) % 2 == 0 else -1.0
    value = main + sign * correction / math.sqrt(a)

    phase_error = EPS * (abs(th) + t * math.log(max(N, 2)))
    rounding = 2 * phase_error * math.sqrt(float((1 / n).sum())) * 4 + 64 * EPS * (1 + abs(value))
    return value, _rs_remainder_bound(t, cfg.rs_correction_terms) + rounding


# ---------------------------------------------------------------------------
# Public evaluators
# ---------------------------------------------------------------------------

def _check_accuracy(fv: FunctionValue, cfg: EvalConfig, what: str) -> FunctionValue:
    if fv.abs_error_estimate > cfg.target_abs_error * max(1.0, abs(fv.value)):
        raise AccuracyUnreachable(
            f"{what}: error estimate {fv.abs_error_estimate:.3g} exceeds target "
            f"{cfg.target_abs_error:.3g} ({fv.method_used.value})"
        )
    return fv


def _zeta_raw(s: complex, cfg: EvalConfig) -> FunctionValue:
    """zeta(s) without accuracy enforcement; s.imag >= 0."""
    if s.imag == 0 and s.real <= -2 and float(s.real / 2).is_integer():
        return FunctionValue(0j, 0.0, Method.REFLECTION)
    if s.real < 0:
        inner = _zeta_raw(1 - s.conjugate(), cfg)
        reflected_inner = inner.value.conjugate()
        factor = _chi_value(s)
        value = factor * reflected_inner
        error = abs(factor) * inner.abs_error_estimate + abs(value) * _chi_relative_error(s)
        return FunctionValue(value, error, Method.REFLECTION)
    if s.real == 0.5 and _riemann_siegel_usable(s.imag, cfg):
        z, err = _riemann_siegel_z(s.imag, cfg)
        th = _theta_stirling(s.imag)
        value = complex(np.exp(-1j * th)) * z
        err += abs(z) * EPS * abs(th)
        return FunctionValue(value, err, Method.RIEMANN_SIEGEL)
    value, error, _, _ = _euler_maclaurin(s, cfg)
    return FunctionValue(complex(value), error, Method.EULER_MACLAURIN)


def zeta(p: EvalPoint, cfg: EvalConfig) -> FunctionValue:
    """
    Riemann zeta function with an error estimate.

    Args:
        p: Evaluation point, |t| <= 1e7
        cfg: Evaluation thresholds

    Returns:
        FunctionValue holding zeta(s)

    Raises:
        PoleProximity: If |s - 1| < 10 * target_abs_error
        OverflowGuard: If |t| exceeds the supported height
        AccuracyUnreachable: If the error estimate misses the target
    """
    s = p.s
    if abs(s - 1) < 10 * cfg.target_abs_error:
        raise PoleProximity(f"s = {s} is within {10 * cfg.target_abs_error:g} of the pole")
    if abs(p.t) > MAX_HEIGHT:
        raise OverflowGuard(f"|t| = {abs(p.t)} exceeds supported height {MAX_HEIGHT:g}")
    if p.t < 0:
        fv = _zeta_raw(s.conjugate(), cfg)
        fv = FunctionValue(fv.value.conjugate(), fv.abs_error_estimate, fv.method_used)
    else:
        fv = _zeta_raw(s, cfg)
    return _check_accuracy(fv, cfg, f"zeta({s})")


def hardy_z(t: float, cfg: EvalConfig) -> FunctionValue:
    """
    Hardy's Z function Z(t) = exp(i theta(t)) zeta(1/2 + it), real-valued.

    Args:
        t: Height, t >= 0
        cfg: Evaluation thresholds

    Returns:
        FunctionValue with zero imaginary part
    """
    if t < 0:
        raise DomainError(f"hardy_z requires t >= 0, got {t}")
    if t > MAX_HEIGHT:
        raise OverflowGuard(f"t = {t} exceeds supported height {MAX_HEIGHT:g}")
    if _riemann_siegel_usable(t, cfg):
        z, err = _riemann_siegel_z(t, cfg)
        fv = FunctionValue(complex(z, 0.0), err, Method.RIEMANN_SIEGEL)
    else:
        value, err, _, _ = _euler_maclaurin(complex(0.5, t), cfg)
        th = theta(t)
        rotated = complex(np.exp(1j * th)) * value
        err += abs(value) * EPS * (1 + abs(th))
        fv = FunctionValue(complex(rotated.real, 0.0), err, Method.EULER_MACLAURIN)
    return _check_accuracy(fv, cfg, f"Z({t})")


def zeta_prime(p: EvalPoint, cfg: EvalConfig) -> FunctionValue:
    """
    Derivative zeta'(s) from the differentiated Euler-Maclaurin expansion.

    For sigma < 0 the derivative of zeta(s) = chi(s) zeta(1-s) is used.
    """
    s = p.s
    if abs(s - 1) < 10 * cfg.target_abs_error:
        raise PoleProximity(f"s = {s} is within {10 * cfg.target_abs_error:g} of the pole")
    if abs(p.t) > MAX_HEIGHT:
        raise OverflowGuard(f"|t| = {abs(p.t)} exceeds supported height {MAX_HEIGHT:g}")
    conj = p.t < 0
    if conj:
        s = s.conjugate()
    if s.real >= 0:
        _, _, dvalue, derror = _euler_maclaurin(s, cfg, derivative=True)
        fv = FunctionValue(complex(dvalue), derror, Method.EULER_MACLAURIN)
    else:
        r = 1 - s
        value, err, dvalue, derr = _euler_maclaurin(r, cfg, derivative=True)
        factor = _chi_value(s)
        log_chi_prime = LOG_PI - 0.5 * complex(special.psi(s / 2)) - 0.5 * complex(special.psi(r / 2))
        result = factor * (log_chi_prime * value - dvalue)
        error = abs(factor) * (abs(log_chi_prime) * err + derr) + abs(result) * _chi_relative_error(s)
        fv = FunctionValue(result, error, Method.REFLECTION)
    if conj:
        fv = FunctionValue(fv.value.conjugate(), fv.abs_error_estimate, fv.method_used)
    return _check_accuracy(fv, cfg, f"zeta'({p.s})")


@lru_cache(maxsize=4)
def _cached_lambda(limit: int):
    return lambda_sieve(limit)


def _dirichlet_terms_needed(sigma: float, target: float) -> Optional[int]:
    """Smallest power of two N whose tail bound sum_{n>N} log n / n^sigma is below target."""
    N = 1024
    while N <= _DIRICHLET_MAX_TERMS:
        if dirichlet_tail_bound(sigma, N) <= target:
            return N
        N *= 2
    return None


def _logderiv_dirichlet(s: complex, N: int) -> FunctionValue:
    lam = _cached_lambda(N)
    weights = lam.log_values()
    support = np.nonzero(weights)[0]
    n = support.astype(float)
    terms = weights[support] * np.exp(-s * np.log(n))
    value = -complex(terms.sum())
    tail = dirichlet_tail_bound(s.real, N)
    mags = float((weights[support] * n ** (-s.real)).sum())
    rounding = EPS * mags * (1 + abs(s.imag) * math.log(N)) + 16 * EPS * (1 + abs(value))
    return FunctionValue(value, tail + rounding, Method.DIRICHLET_SERIES)


def _zero_coverage(zeros_nearby) -> Tuple[Sequence[float], Optional[float], Optional[float]]:
    """
    Ordinates and covered range of the supplied zeros.

    A ZeroTable states its own range; a plain sequence is taken as every zero
    within distance 2 of t, so its range is (None, None).
    """
    items = getattr(zeros_nearby, "zeros", zeros_nearby)
    gammas = [z.gamma if hasattr(z, "gamma") else float(z) for z in items]
    if hasattr(zeros_nearby, "t_min"):
        return gammas, zeros_nearby.t_min, zeros_nearby.t_max
    return gammas, None, None


def logderiv_zeta(p: EvalPoint,
                  zeros_nearby: Union["ZeroTable", Sequence["ZeroOrdinate"], None],
                  cfg: EvalConfig) -> FunctionValue:
    """
    Logarithmic derivative zeta'/zeta(s).

    For sigma > 5/4 the von Mangoldt Dirichlet series is summed when its tail bound
    meets the target; otherwise zeta'/zeta is the quotient of the Euler-Maclaurin
    derivative and value, and sigma < 0 goes through the log-derivative
    functional equation.

    Args:
        p: Evaluation point
        zeros_nearby: A ZeroTable covering [t-2, t+2], or every zero within
            distance 2 of t as a plain sequence; required when sigma <= 5/4
        cfg: Evaluation thresholds

    Raises:
        MissingZeroCoverage: If the zeros do not cover [t-2, t+2] when needed
        ZeroProximity: If s lies within 10 * target_abs_error of a supplied zero
    """
    if p.t < 0:
        fv = logderiv_zeta(EvalPoint(p.sigma, -p.t), zeros_nearby, cfg)
        return FunctionValue(fv.value.conjugate(), fv.abs_error_estimate, fv.method_used)

    s = p.s
    if abs(s - 1) < 10 * cfg.target_abs_error:
        raise PoleProximity(f"s = {s} is within {10 * cfg.target_abs_error:g} of the pole")

    if p.sigma > 1.25:
        N = _dirichlet_terms_needed(p.sigma, 0.5 * cfg.target_abs_error)
        if N is not None:
            return _check_accuracy(_logderiv_dirichlet(s, N), cfg, f"zeta'/zeta({s})")
    else:
        if zeros_nearby is None:
            raise MissingZeroCoverage(f"zeros within distance 2 of t = {p.t} are required")
        gammas, lo, hi = _zero_coverage(zeros_nearby)
        # no ordinate lies below the first zero, so tables starting at 10 cover everything
        if lo is not None and (lo > max(p.t - 2, 10.0) or hi < p.t + 2):
            raise MissingZeroCoverage(
                f"zero list covers [{lo}, {hi}] but [{p.t - 2}, {p.t + 2}] is required"
            )
        for gamma in gammas:
            if abs(s - complex(0.5, gamma)) < 10 * cfg.target_abs_error:
                raise ZeroProximity(f"s = {s} is too close to the zero 1/2 + i{gamma}", gamma=gamma)

    if p.sigma < 0:
        r = 1 - s
        inner = logderiv_zeta(EvalPoint.from_complex(r), zeros_nearby, cfg)
        gamma_part = LOG_PI - 0.5 * complex(special.psi(s / 2)) - 0.5 * complex(special.psi(r / 2))
        value = gamma_part - inner.value
        error = inner.abs_error_estimate + 16 * EPS * (1 + abs(gamma_part))
        return _check_accuracy(FunctionValue(value, error, Method.REFLECTION), cfg, f"zeta'/zeta({s})")

    value, err, dvalue, derr = _euler_maclaurin(s, cfg, derivative=True)
    if value == 0:
        raise ZeroProximity(f"zeta vanishes at s = {s}")
    quotient = dvalue / value
    error = (derr + abs(quotient) * err) / abs(value)
    fv = FunctionValue(complex(quotient), error, Method.EULER_MACLAURIN)
    return _check_accuracy(fv, cfg, f"zeta'/zeta({s})")
