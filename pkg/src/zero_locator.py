"""Gram points, zero search on the critical line and zero counting."""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np
from scipy import optimize, special

from .complex_eval import MAX_HEIGHT, hardy_z, theta, theta_prime
from .config import EvalConfig
from .errors import DomainError, NonConvergence
from .zero_table import ZeroOrdinate, ZeroSource, ZeroTable

logger = logging.getLogger(__name__)

MAX_SUBDIVISION = 64
ORDINATE_XTOL = 1e-10
RVM_BAND = 3.0
_GRAM_MAX_ITER = 50
_GOOD_GRAM_SEARCH = 50
_CHUNK_INTERVALS = 32

Bracket = Tuple[float, float, float, float]  # (a, b, Z(a), Z(b))


@dataclass(frozen=True)
class GramPoint:
    """Solution g of theta(g) = n pi."""
    n: int
    g: float


@dataclass(frozen=True)
class ZeroCount:
    """Riemann-von Mangoldt main term and its nearest integer."""
    main: float
    rounded: int


def gram_point(n: int) -> GramPoint:
    """
    Gram point g_n by Newton iteration from the Lambert-W inverse of theta.

    Args:
        n: Gram index, at least -1

    Returns:
        GramPoint with theta(g) - n pi within 1e-8

    Raises:
        NonConvergence: If Newton does not settle within the iteration cap
    """
    if n < -1:
        raise DomainError(f"Gram index must be >= -1, got {n}")
    target = n * math.pi
    w = special.lambertw((8 * n + 1) / (8 * math.e)).real
    g = 2 * math.pi * math.exp(1 + w)
    for _ in range(_GRAM_MAX_ITER):
        step = (theta(g) - target) / theta_prime(g)
        g -= step
        if abs(step) <= 1e-13 * max(1.0, g):
            return GramPoint(n=n, g=g)
    raise NonConvergence(f"Gram point {n} did not converge (last step {step:.3g})")


def count_zeros_rvm(T: float) -> ZeroCount:
    """Riemann-von Mangoldt main term (T/2pi) log(T/(2pi e)) + 7/8."""
    if T < 10:
        raise DomainError(f"count_zeros_rvm requires T >= 10, got {T}")
    main = T / (2 * math.pi) * math.log(T / (2 * math.pi * math.e)) + 7 / 8
    return ZeroCount(main=main, rounded=int(round(main)))


class ZeroLocator:
    """
    Locates zeros of Hardy's Z between Gram points.

    Each interval is first tested for a sign change; intervals without one
    are subdivided into 2, 4, ..., 64 pieces. Brackets are refined with
    Brent's method.
    """

    def __init__(self, cfg: EvalConfig, zero_tolerance: float = 1e-7, threads: int = 1):
        if threads < 1:
            raise ValueError("threads must be at least 1")
        self.cfg = cfg
        self.zero_tolerance = zero_tolerance
        self.threads = threads

    def z(self, t: float) -> float:
        return hardy_z(t, self.cfg).value.real

    def _map(self, func, items: Sequence) -> list:
        """Order-preserving map over items, threaded when configured."""
        if self.threads == 1 or len(items) <= 1:
            return [func(item) for item in items]
        with ThreadPoolExecutor(max_workers=self.threads) as pool:
            return list(pool.map(func, items))

    def _chunked(self, items: Sequence, size: int = _CHUNK_INTERVALS) -> List[Sequence]:
        return [items[i:i + size] for i in range(0, len(items), size)]

    def gram_edges(self, lo: float, hi: float) -> List[GramPoint]:
        """Gram points strictly inside (lo, hi)."""
        first = math.floor(theta(lo) / math.pi) + 1
        last = math.ceil(theta(hi) / math.pi) - 1
        points = [gram_point(n) for n in range(max(first, -1), last + 1)]
        return [gp for gp in points if lo < gp.g < hi]

    def _scan_interval(self, bracket: Bracket) -> List[Bracket]:
        a, b, za, zb = bracket
        if za * zb < 0:
            return [bracket]
        pieces = 2
        while pieces <= MAX_SUBDIVISION:
            grid = np.linspace(a, b, pieces + 1)
            values = [za] + [self.z(float(t)) for t in grid[1:-1]] + [zb]
            found = [
                (float(grid[k]), float(grid[k + 1]), values[k], values[k + 1])
                for k in range(pieces) if values[k] * values[k + 1] < 0
            ]
            if found:
                logger.debug("Resolved [%.6f, %.6f] with %d pieces", a, b, pieces)
                return found
            pieces *= 2
        return []

    def brackets(self, lo: float, hi: float) -> List[Bracket]:
        """Sign-change brackets of Z on [lo, hi], in ascending order."""
        edges = [lo] + [gp.g for gp in self.gram_edges(lo, hi)] + [hi]
        values = [v for chunk in self._map(lambda ts: [self.z(t) for t in ts], self._chunked(edges))
                  for v in chunk]
        intervals = [(edges[k], edges[k + 1], values[k], values[k + 1]) for k in range(len(edges) - 1)]
        scanned = self._map(lambda chunk: [br for iv in chunk for br in self._scan_interval(iv)],
                            self._chunked(intervals))
        return [br for chunk in scanned for br in chunk]

    def _refine(self, bracket: Bracket) -> Tuple[float, float]:
        a, b, _, _ = bracket
        gamma = optimize.brentq(self.z, a, b, xtol=ORDINATE_XTOL, maxiter=200)
        residual = abs(self.z(gamma))
        if residual > self.zero_tolerance:
            gamma = optimize.brentq(self.z, a, b, xtol=1e-13, maxiter=400)
            residual = abs(self.z(gamma))
        return gamma, residual

    def count_below(self, t: float) -> int:
        """
        Number of zeros with ordinate in (0, t].

        Walks down from the Gram point below t to one satisfying Gram's law,
        where N(g_n) = n + 1, then counts sign changes up to t.
        """
        n = math.floor(theta(t) / math.pi)
        for k in range(n, max(-1, n - _GOOD_GRAM_SEARCH) - 1, -1):
            gp = gram_point(k)
            if gp.g > t:
                continue
            if (-1) ** (k % 2) * self.z(gp.g) > 0:
                return k + 1 + len(self.brackets(gp.g, t))
        raise NonConvergence(f"No Gram point satisfying Gram's law below {t}")

    def find(self, t_lo: float, t_hi: float) -> ZeroTable:
        """Locate all zeros with ordinates in [t_lo, t_hi]."""
        if not 10 <= t_lo <= t_hi <= MAX_HEIGHT:
            raise DomainError(f"find_zeros needs 10 <= t_lo <= t_hi <= {MAX_HEIGHT:g}")
        if t_lo == t_hi:
            return ZeroTable(zeros=(), t_min=t_lo, t_max=t_hi, complete=True)

        brackets = self.brackets(t_lo, t_hi)
        refined = [r for chunk in self._map(lambda c: [self._refine(br) for br in c], self._chunked(brackets))
                   for r in chunk]
        below = self.count_below(t_lo)
        zeros = tuple(
            ZeroOrdinate(gamma=g, index=below + k + 1, refinement_residual=res, source=ZeroSource.COMPUTED)
            for k, (g, res) in enumerate(refined)
        )

        complete = self._verify(zeros, below, t_lo, t_hi)
        loose = [z.gamma for z in zeros if z.refinement_residual > self.zero_tolerance]
        if loose:
            logger.warning("%d zeros exceed residual tolerance %g: %s", len(loose), self.zero_tolerance, loose[:5])
            complete = False
        table = ZeroTable(zeros=zeros, t_min=t_lo, t_max=t_hi, complete=complete)
        if table.close_pairs:
            logger.warning("Ordinates closer than 1e-6 (multiplicity not certified): %s", table.close_pairs)
        logger.info("Found %d zeros in [%g, %g] (complete=%s)", len(zeros), t_lo, t_hi, complete)
        return table

    def _verify(self, zeros: Tuple[ZeroOrdinate, ...], below: int, t_lo: float, t_hi: float) -> bool:
        """Count check against the Riemann-von Mangoldt band and a Gram point obeying Gram's law."""
        total = below + len(zeros)
        main = count_zeros_rvm(t_hi).main
        if abs(total - main) > RVM_BAND:
            logger.warning("Zero count %d on (0, %g] is outside %.2f +- %g", total, t_hi, main, RVM_BAND)
            return False
        n = math.floor(theta(t_hi) / math.pi)
        for k in range(n, max(-2, n - _GOOD_GRAM_SEARCH), -1):
            gp = gram_point(k)
            if gp.g < t_lo:
                break
            if gp.g > t_hi:
                continue
            if (-1) ** (k % 2) * self.z(gp.g) > 0:
                counted = below + sum(1 for z in zeros if z.gamma <= gp.g)
                if counted != k + 1:
                    logger.warning("Found %d zeros up to Gram point g_%d, expected %d", counted, k, k + 1)
                    return False
                break
        return True


def find_zeros(t_lo: float,
               t_hi: float,
               cfg: EvalConfig,
               threads: int = 1,
               zero_tolerance: float = 1e-7) -> ZeroTable:
    """
    All zeros of Z with ordinates in [t_lo, t_hi].

    Args:
        t_lo: Lower height, at least 10
        t_hi: Upper height, at most 1e7
        cfg: Evaluation thresholds
        threads: Worker threads; results do not depend on this
        zero_tolerance: Max |Z(gamma)| accepted after refinement

    Returns:
        ZeroTable whose complete flag reports the count check
    """
    return ZeroLocator(cfg, zero_tolerance=zero_tolerance, threads=threads).find(t_lo, t_hi)

