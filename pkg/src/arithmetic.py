"""Von Mangoldt sieve, twisted coefficients D_y(n) and Chebyshev psi sums."""

import logging
import math
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

import numpy as np
import pandas as pd

from .errors import LimitExceeded

logger = logging.getLogger(__name__)

SIEVE_LIMIT = 10 ** 8


@dataclass(frozen=True)
class VonMangoldtTable:
    """
    Lambda(n) for n <= limit.

    base[n] holds the prime p (int32) when n = p^k and 0 otherwise, so that
    Lambda(n) = log(base[n]) on the support.
    """
    limit: int
    base: np.ndarray

    @cached_property
    def values(self) -> np.ndarray:
        """Lambda(n) indexed by n; entries 0 and 1 are zero."""
        out = np.zeros(self.limit + 1, dtype=float)
        support = self.base > 0
        out[support] = np.log(self.base[support])
        return out

    def log_values(self) -> np.ndarray:
        return self.values

    def __call__(self, n: int) -> float:
        self._check(n)
        return float(self.values[n])

    def is_prime_power(self, n: int) -> bool:
        self._check(n)
        return bool(self.base[n] > 0)

    def prime_powers(self, upto: int = None) -> np.ndarray:
        """Prime powers a <= upto (default: the whole table)."""
        upto = self.limit if upto is None else upto
        self._check(upto)
        return np.nonzero(self.base[: upto + 1])[0]

    def _check(self, n: float) -> None:
        if n > self.limit:
            raise LimitExceeded(f"{n} exceeds von Mangoldt table limit {self.limit}")


def lambda_sieve(N: int) -> VonMangoldtTable:
    """
    Sieve Lambda(n) for all n <= N with prime-power marking.

    Args:
        N: Table limit, at most 1e8

    Returns:
        VonMangoldtTable covering 0..N

    Raises:
        LimitExceeded: If N exceeds the sieve limit
    """
    if N < 1:
        raise ValueError("Sieve limit must be positive")
    if N > SIEVE_LIMIT:
        raise LimitExceeded(f"sieve limit {N} exceeds {SIEVE_LIMIT:g}")

    composite = np.zeros(N + 1, dtype=bool)
    composite[:2] = True
    root = math.isqrt(N)
    for p in range(2, root + 1):
        if not composite[p]:
            composite[p * p::p] = True
    primes = np.nonzero(~composite)[0]

    base = np.zeros(N + 1, dtype=np.int32)
    base[primes] = primes
    for p in primes[primes <= root]:
        pk = int(p) * int(p)
        while pk <= N:
            base[pk] = p
            pk *= int(p)

    logger.debug("Sieved Lambda up to %d (%d primes)", N, len(primes))
    return VonMangoldtTable(limit=N, base=base)


@dataclass(frozen=True)
class CoeffTable:
    """
    D_y(n) = -sum_{ab=n} Lambda(a) b^{-iy} for n <= limit.

    entries is indexed by n; entries[0] is unused and kept at zero.
    """
    y: float
    limit: int
    entries: np.ndarray

    def __getitem__(self, n: int) -> complex:
        if not 1 <= n <= self.limit:
            raise LimitExceeded(f"n = {n} outside 1..{self.limit}")
        return complex(self.entries[n])

    def to_frame(self) -> pd.DataFrame:
        """Coefficient table as columns n, re, im."""
        values = self.entries[1:]
        return pd.DataFrame({
            "n": np.arange(1, self.limit + 1),
            "re": values.real,
            "im": values.imag,
        })

    def to_csv(self, path: str) -> None:
        output = Path(path)
        output.parent.mkdir(parents=True, exist_ok=True)
        self.to_frame().to_csv(output, index=False, float_format="%.17g")


def coeff_dy(y: float, N: int, lam: VonMangoldtTable) -> CoeffTable:
    """
    Build D_y(n) for n <= N by forward accumulation over prime powers.

    Each prime power a <= N contributes -Lambda(a) (n/a)^{-iy} to every multiple n of a.

    Raises:
        LimitExceeded: If the sieve does not reach N
    """
    if N > lam.limit:
        raise LimitExceeded(f"coefficient limit {N} exceeds sieve limit {lam.limit}")
    b = np.arange(N + 1, dtype=float)
    b[0] = 1.0
    bpow = np.exp(-1j * y * np.log(b))
    entries = np.zeros(N + 1, dtype=complex)
    weights = lam.values
    for a in lam.prime_powers(N):
        entries[a::a] -= weights[a] * bpow[1: N // a + 1]
    return CoeffTable(y=y, limit=N, entries=entries)


def coeff_dy_naive(y: float, n: int, lam: VonMangoldtTable) -> complex:
    """D_y(n) by a direct loop over the factorizations n = ab."""
    total = 0j
    for a in range(2, n + 1):
        if n % a == 0 and lam.is_prime_power(a):
            total -= lam(a) * complex(np.exp(-1j * y * math.log(n // a)))
    return total


def chebyshev_psi(x: float, lam: VonMangoldtTable) -> float:
    """psi(x) = sum over n <= x of Lambda(n)."""
    if x > lam.limit:
        raise LimitExceeded(f"x = {x} exceeds sieve limit {lam.limit}")
    if x < 2:
        return 0.0
    return float(math.fsum(lam.values[: int(math.floor(x)) + 1]))


def twisted_psi(x: float, y: float, lam: VonMangoldtTable) -> complex:
    """sum over n <= x of Lambda(n) n^{iy}."""
    if x > lam.limit:
        raise LimitExceeded(f"x = {x} exceeds sieve limit {lam.limit}")
    if x < 2:
        return 0j
    support = lam.prime_powers(int(math.floor(x)))
    n = support.astype(float)
    return complex((lam.values[support] * np.exp(1j * y * np.log(n))).sum())


def von_koch_ratio(x: float, lam: VonMangoldtTable) -> float:
    """|psi(x) - x| / (sqrt(x) log^2 x)."""
    return abs(chebyshev_psi(x, lam) - x) / (math.sqrt(x) * math.log(x) ** 2)


def twisted_psi_ratio(x: float, y: float, lam: VonMangoldtTable) -> float:
    """|twisted_psi - x^{1+iy}/(1+iy)| / (sqrt(x) log^2(x + |y|))."""
    main = complex(np.exp((1 + 1j * y) * math.log(x))) / (1 + 1j * y)
    return abs(twisted_psi(x, y, lam) - main) / (math.sqrt(x) * math.log(x + abs(y)) ** 2)


def dirichlet_tail_bound(sigma: float, N: int) -> float:
    """Bound for sum over n > N of log(n) / n^sigma, sigma > 1."""
    d = sigma - 1
    return N ** (-d) * (math.log(N) / d + 1 / d ** 2)
