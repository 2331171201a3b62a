"""Primality, witness primes with |p^{-iy} - 1| > 1/sqrt(2), and the prime range for x."""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence, Tuple

import numpy as np

from .errors import DomainError, EmptyRange, NoWitnessFound

logger = logging.getLogger(__name__)

WITNESS_THRESHOLD = 1 / math.sqrt(2)
SEGMENT_SIZE = 1 << 18
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@dataclass(frozen=True)
class WitnessPrime:
    """A prime p in (window_lo, window_hi) with deviation |p^{-iy} - 1|."""
    p: int
    y: float
    deviation: float
    window_lo: float
    window_hi: float
    method: str = "scan"  # "scan" or "construction"


@dataclass(frozen=True)
class WitnessPair:
    """The two candidate primes of the construction and the one selected."""
    p1: int
    p2: int
    deviation1: float
    deviation2: float
    alpha: float
    chosen: Optional[int]


@dataclass(frozen=True)
class PrimeRange:
    """Primes in (lo, hi) with hi / lo = e^{pi/|y|}."""
    lo: float
    hi: float
    primes: Tuple[int, ...]
    scriptL: float


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 2^63."""
    if n < 2:
        return False
    if n >= 1 << 63:
        raise DomainError("is_prime supports n < 2^63")
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def deviation(p: int, y: float) -> float:
    """|p^{-iy} - 1| = 2 |sin(y log p / 2)|."""
    return 2 * abs(math.sin(y * math.log(p) / 2))


def _base_primes(limit: int) -> np.ndarray:
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p::p] = False
    return np.nonzero(sieve)[0]


def _sieve_segment(start: int, stop: int, base: np.ndarray) -> np.ndarray:
    """Primes in [start, stop)."""
    if stop <= start:
        return np.empty(0, dtype=np.int64)
    flags = np.ones(stop - start, dtype=bool)
    for p in base:
        p = int(p)
        if p * p >= stop:
            break
        first = max(p * p, ((start + p - 1) // p) * p)
        flags[first - start::p] = False
    if start <= 1:
        flags[: 2 - start] = False
    return np.nonzero(flags)[0].astype(np.int64) + start


def _segments(lo: int, hi: int) -> Iterator[Tuple[int, int]]:
    for start in range(lo, hi, SEGMENT_SIZE):
        yield start, min(start + SEGMENT_SIZE, hi)


def segmented_primes(lo: float, hi: float, threads: int = 1) -> np.ndarray:
    """
    All primes p with lo < p < hi by a segmented sieve.

    Segments are sieved independently and concatenated in order.
    """
    start = max(2, math.floor(lo) + 1)
    stop = math.ceil(hi)  # exclusive
    if stop <= start:
        return np.empty(0, dtype=np.int64)
    base = _base_primes(math.isqrt(stop) + 1)
    segments = list(_segments(start, stop))
    if threads > 1 and len(segments) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda seg: _sieve_segment(seg[0], seg[1], base), segments))
    else:
        parts = [_sieve_segment(a, b, base) for a, b in segments]
    return np.concatenate(parts) if parts else np.empty(0, dtype=np.int64)


def _first_prime_in(lo: float, hi: float) -> Optional[int]:
    for a, b in _segments(max(2, math.floor(lo) + 1), math.ceil(hi)):
        primes = segmented_primes(a - 1, b)
        if len(primes):
            return int(primes[0])
    return None


def construct_witness_pair(y: float, t: float) -> WitnessPair:
    """
    Two-prime construction: p1 in (t, alpha t) and p2 in (alpha^3 t, alpha^4 t),
    alpha = e^{pi/(4|y|)}. The phases y log p1 and y log p2 differ by between
    pi/2 and pi, so at least one deviation exceeds 1/sqrt(2).

    Raises:
        NoWitnessFound: If either sub-window holds no prime
    """
    if y == 0:
        raise DomainError("y must be nonzero")
    alpha = math.exp(math.pi / (4 * abs(y)))
    p1 = _first_prime_in(t, alpha * t)
    p2 = _first_prime_in(alpha ** 3 * t, alpha ** 4 * t)
    if p1 is None or p2 is None:
        raise NoWitnessFound("construction sub-window holds no prime", (t, alpha ** 4 * t), 0.0)
    d1, d2 = deviation(p1, y), deviation(p2, y)
    chosen = p1 if d1 > WITNESS_THRESHOLD else (p2 if d2 > WITNESS_THRESHOLD else None)
    return WitnessPair(p1=p1, p2=p2, deviation1=d1, deviation2=d2, alpha=alpha, chosen=chosen)


def find_witness_prime(y: float, t: float) -> WitnessPrime:
    """
    Smallest prime p in (t, e^{pi/|y|} t) with |p^{-iy} - 1| > 1/sqrt(2).

    Args:
        y: Nonzero shift
        t: Window start

    Returns:
        WitnessPrime from the ascending scan, or from the two-prime construction
        if the scan finds nothing

    Raises:
        DomainError: If y = 0 or the window is narrower than 2
        NoWitnessFound: If no prime qualifies (t below the working threshold)
    """
    if y == 0:
        raise DomainError("y must be nonzero")
    lo = t
    hi = math.exp(math.pi / abs(y)) * t
    if hi - lo < 2:
        raise DomainError(f"window ({lo}, {hi}) is narrower than 2")

    max_dev = 0.0
    for a, b in _segments(max(2, math.floor(lo) + 1), math.ceil(hi)):
        primes = segmented_primes(a - 1, b)
        if not len(primes):
            continue
        devs = 2 * np.abs(np.sin(y * np.log(primes.astype(float)) / 2))
        hits = np.nonzero(devs > WITNESS_THRESHOLD)[0]
        if len(hits):
            k = int(hits[0])
            return WitnessPrime(p=int(primes[k]), y=y, deviation=float(devs[k]), window_lo=lo, window_hi=hi)
        max_dev = max(max_dev, float(devs.max()))

    logger.warning("No witness prime in (%g, %g) for y=%g by scan; trying construction", lo, hi, y)
    pair = construct_witness_pair(y, t)
    if pair.chosen is not None:
        dev = deviation(pair.chosen, y)
        return WitnessPrime(p=pair.chosen, y=y, deviation=dev, window_lo=lo, window_hi=hi, method="construction")
    raise NoWitnessFound("no prime with deviation > 1/sqrt(2)", (lo, hi), max(max_dev, pair.deviation1, pair.deviation2))


def smallest_witness_height(y: float, t_values: Sequence[float]) -> Optional[float]:
    """Smallest t in t_values at which find_witness_prime succeeds."""
    for t in sorted(t_values):
        try:
            find_witness_prime(y, t)
            return t
        except (NoWitnessFound, DomainError):
            continue
    return None


def script_l(T_bold: float) -> float:
    """exp(log T / log log T)."""
    log_t = math.log(T_bold)
    return math.exp(log_t / math.log(log_t))


def theorem2_prime_range(T_bold: float, y: float, Theta: float, threads: int = 1) -> PrimeRange:
    """
    Primes x with T L^{-Theta} < x < e^{pi/|y|} T L^{-Theta}.

    Raises:
        DomainError: If T_bold < 100 or y = 0
        EmptyRange: If lo < 2, the window is narrower than 2, or it holds no primes
    """
    if T_bold < 100:
        raise DomainError(f"T_bold must be at least 100, got {T_bold}")
    if y == 0:
        raise DomainError("y must be nonzero")
    ell = script_l(T_bold)
    lo = T_bold * ell ** (-Theta)
    hi = math.exp(math.pi / abs(y)) * lo
    if lo < 2:
        raise EmptyRange(f"lower end {lo:.6g} is below 2", lo, hi)
    if hi - lo < 2:
        raise EmptyRange(f"window ({lo:.6g}, {hi:.6g}) is narrower than 2", lo, hi)
    primes = segmented_primes(lo, hi, threads=threads)
    if not len(primes):
        raise EmptyRange(f"no primes in ({lo:.6g}, {hi:.6g})", lo, hi)
    return PrimeRange(lo=lo, hi=hi, primes=tuple(int(p) for p in primes), scriptL=ell)
