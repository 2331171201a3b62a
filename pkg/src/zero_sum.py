"""
The shifted zero-sum experiment.

For zeros rho = 1/2 + i gamma with T1 < gamma < T2 the experiment forms

    S = sum x^rho zeta(rho + iy)

and compares it with the main term (1/2pi)(x^{-iy} - 1) Delta log T, where
Delta = T2 - T1 and T = (T1 + T2)/2. The residual is normalised by the
error envelope Delta log T / sqrt(loglog T) + T L^{-A}.
"""

import dataclasses
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from .complex_eval import EvalPoint, zeta
from .config import EvalConfig
from .errors import (
    DomainError,
    EmptyRange,
    EmptyWindow,
    EvaluationFailure,
    IncompleteZeroTable,
    ZetaLabError,
)
from .prime_window import WITNESS_THRESHOLD, find_witness_prime, is_prime, script_l, theorem2_prime_range
from .zero_locator import find_zeros
from .zero_table import ZeroTable

logger = logging.getLogger(__name__)

ENDPOINT_COLLISION = 1e-6
ENDPOINT_SHIFT = 1e-5
SUM_CHUNK = 64

ZeroProvider = Callable[[float, float], ZeroTable]


@dataclass(frozen=True)
class ExperimentSpec:
    """
    Parameters of one zero-sum run.

    With strict=True the standing hypothesis 2 T1 > T2 > T1 is enforced;
    with strict=False a violation of 2 T1 > T2 is only recorded in advisories.
    """
    T1: float
    T2: float
    y: float
    x: Optional[int]
    A: float = 1.0
    C: float = 1.0
    Theta: float = 2.0
    strict: bool = True
    advisories: Tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if not self.T2 > self.T1 > math.e:
            raise DomainError(f"need T2 > T1 > e, got T1={self.T1}, T2={self.T2}")
        if self.y == 0:
            raise DomainError("y must be nonzero")
        if self.x is not None and not is_prime(int(self.x)):
            raise DomainError(f"x must be prime, got {self.x}")
        if not self.A > 0 or not self.C > 0:
            raise DomainError("A and C must be positive")
        if not self.Theta > 0:
            raise DomainError("Theta must be positive")

        notes = list(self.advisories)
        if not 2 * self.T1 > self.T2:
            if self.strict:
                raise DomainError(f"need 2*T1 > T2, got T1={self.T1}, T2={self.T2}")
            notes.append("relaxed: 2*T1 > T2 does not hold")
        if self.Theta < 2:
            notes.append(f"Theta={self.Theta} is below 2")
        if self.Theta < max(self.A + 2, 4 * self.A):
            notes.append(f"Theta={self.Theta} < max(A+lambda+2, 4A) for every lambda > 0")
        object.__setattr__(self, "advisories", tuple(dict.fromkeys(notes)))

    @property
    def Delta(self) -> float:
        return self.T2 - self.T1

    @property
    def T_bold(self) -> float:
        return (self.T1 + self.T2) / 2

    @property
    def scriptL(self) -> float:
        return script_l(self.T_bold)

    @property
    def epsilon(self) -> float:
        return self.T1 ** (-self.C / math.log(math.log(self.T1)))

    def to_dict(self) -> dict:
        return {
            "T1": self.T1, "T2": self.T2, "y": self.y, "x": self.x,
            "A": self.A, "C": self.C, "Theta": self.Theta, "strict": self.strict,
            "Delta": self.Delta, "T_bold": self.T_bold,
            "scriptL": self.scriptL, "epsilon": self.epsilon,
            "advisories": list(self.advisories),
        }


@dataclass(frozen=True)
class ZeroSumReport:
    """Computed sum, main term, residual and its normalised ratio."""
    spec: ExperimentSpec
    zero_count: int
    S: complex
    M: complex
    residual: complex
    residual_abs: float
    normalizer: float
    ratio: float
    per_zero_breakdown: Optional[Tuple[Tuple[float, complex], ...]] = None
    S_abs_error: float = 0.0
    x_source: str = "given"
    perturbations: Tuple[str, ...] = ()
    error: Optional[str] = None

    @classmethod
    def failed(cls, spec: ExperimentSpec, error: Exception, x_source: str = "given") -> "ZeroSumReport":
        nan = float("nan")
        return cls(spec=spec, zero_count=0, S=complex(nan, nan), M=complex(nan, nan),
                   residual=complex(nan, nan), residual_abs=nan, normalizer=nan, ratio=nan,
                   x_source=x_source, error=f"{type(error).__name__}: {error}")


@dataclass(frozen=True)
class DominanceCheck:
    """The chain witness deviation > 1/sqrt(2) and residual < |M| implies S != 0."""
    witness_deviation: float
    is_witness: bool
    ratio_threshold: float
    main_dominates: bool
    implies_nonzero: bool
    consistent: bool


@dataclass(frozen=True)
class WitnessResult:
    """Zeros in [T, T(1+eps)] and the first one whose shifted value is nonzero."""
    T: float
    y: float
    C: float
    epsilon: float
    window: Tuple[float, float]
    zeros_in_window: Tuple[float, ...]
    witness_gamma: Optional[float]
    shifted_values: Tuple[Tuple[float, float], ...]


@dataclass(frozen=True)
class N0yCount:
    total: int
    nonvanishing: int
    flagged: Tuple[float, ...]


def main_term(x: int, y: float, T1: float, T2: float) -> complex:
    """(1/2pi)(x^{-iy} - 1)(T2 - T1) log((T1 + T2)/2)."""
    if not T2 > T1 > 0:
        raise DomainError(f"need T2 > T1 > 0, got T1={T1}, T2={T2}")
    twist = complex(np.exp(-1j * y * math.log(x))) - 1
    return twist * (T2 - T1) * math.log((T1 + T2) / 2) / (2 * math.pi)


def normalizer(spec: ExperimentSpec) -> float:
    """Delta log T / sqrt(loglog T) + T L^{-A}."""
    log_t = math.log(spec.T_bold)
    return spec.Delta * log_t / math.sqrt(math.log(log_t)) + spec.T_bold * spec.scriptL ** (-spec.A)


def pairwise_sum(values: Sequence[complex]) -> complex:
    """Sum in a fixed pairwise order: (v0+v1) + (v2+v3) + ..., repeated."""
    level = list(values)
    if not level:
        return 0j
    while len(level) > 1:
        level = [level[k] + level[k + 1] if k + 1 < len(level) else level[k] for k in range(0, len(level), 2)]
    return level[0]


def epsilon_for(T: float, C: float) -> float:
    """T^{-C / loglog T}."""
    return T ** (-C / math.log(math.log(T)))


def theorem1_spec(T: float, y: float, C: float, x: int, Theta: float = 2.0) -> ExperimentSpec:
    """Parameters for the witness window: A = 2C, T1 = T, T2 = T(1 + eps)."""
    eps = epsilon_for(T, C)
    return ExperimentSpec(T1=T, T2=T * (1 + eps), y=y, x=x, A=2 * C, C=C, Theta=Theta)


class ZeroSumExperiment:
    """
    Runs zero-sum computations with a fixed evaluation config.

    Terms are computed in chunks of fixed size and reduced pairwise in index
    order, so results do not depend on the thread count.
    """

    def __init__(self, cfg: EvalConfig, threads: int = 1, zero_provider: Optional[ZeroProvider] = None):
        self.cfg = cfg
        self.threads = threads
        self.zero_provider = zero_provider or (lambda lo, hi: find_zeros(lo, hi, cfg, threads=threads))

    def _map(self, func, items: Sequence) -> list:
        if self.threads == 1 or len(items) <= 1:
            return [func(item) for item in items]
        with ThreadPoolExecutor(max_workers=self.threads) as pool:
            return list(pool.map(func, items))

    def _shifted_zeta(self, t: float):
        try:
            return zeta(EvalPoint(0.5, t), self.cfg)
        except ZetaLabError as exc:
            raise EvaluationFailure(f"zeta(1/2 + i{t}) failed: {exc}") from exc

    def _chunk_terms(self, gammas: Sequence[float], x: int, y: float) -> List[Tuple[complex, float]]:
        log_x = math.log(x)
        sqrt_x = math.sqrt(x)
        out = []
        for gamma in gammas:
            phase = math.fmod(gamma * log_x, 2 * math.pi)
            fv = self._shifted_zeta(gamma + y)
            out.append((sqrt_x * complex(np.exp(1j * phase)) * fv.value, sqrt_x * fv.abs_error_estimate))
        return out

    def _perturb(self, spec: ExperimentSpec, zeros: ZeroTable) -> Tuple[ExperimentSpec, Tuple[str, ...]]:
        notes = []
        T1, T2 = spec.T1, spec.T2
        if zeros.nearest_distance(T1) < ENDPOINT_COLLISION:
            T1 -= ENDPOINT_SHIFT
            notes.append(f"T1 moved from {spec.T1!r} to {T1!r} (ordinate collision)")
        if zeros.nearest_distance(T2) < ENDPOINT_COLLISION:
            T2 += ENDPOINT_SHIFT
            notes.append(f"T2 moved from {spec.T2!r} to {T2!r} (ordinate collision)")
        if not notes:
            return spec, ()
        for note in notes:
            logger.warning(note)
        return dataclasses.replace(spec, T1=T1, T2=T2, advisories=spec.advisories + tuple(notes)), tuple(notes)

    def run(self, spec: ExperimentSpec, zeros: ZeroTable, keep_breakdown: bool = False,
            x_source: str = "given") -> ZeroSumReport:
        """
        Compute S, the main term and the normalised residual.

        Raises:
            DomainError: If x is missing or below 2
            IncompleteZeroTable: If the table is not complete on [T1, T2]
            EvaluationFailure: If a shifted zeta value cannot be computed
        """
        if spec.x is None or spec.x < 2:
            raise DomainError("zero_sum needs a prime x >= 2")
        if not zeros.covers(spec.T1, spec.T2):
            raise IncompleteZeroTable(
                f"zero table [{zeros.t_min}, {zeros.t_max}] (complete={zeros.complete}) "
                f"does not cover [{spec.T1}, {spec.T2}]"
            )
        spec, perturbations = self._perturb(spec, zeros)
        gammas = [z.gamma for z in zeros.between(spec.T1, spec.T2)]

        chunks = [gammas[i:i + SUM_CHUNK] for i in range(0, len(gammas), SUM_CHUNK)]
        results = self._map(lambda c: self._chunk_terms(c, spec.x, spec.y), chunks)
        chunk_sums = [pairwise_sum([term for term, _ in chunk]) for chunk in results]
        S = pairwise_sum(chunk_sums)
        S_err = math.fsum(err for chunk in results for _, err in chunk)

        M = main_term(spec.x, spec.y, spec.T1, spec.T2)
        residual = S - M
        norm = normalizer(spec)
        breakdown = None
        if keep_breakdown:
            terms = [term for chunk in results for term, _ in chunk]
            breakdown = tuple(zip(gammas, terms))
        report = ZeroSumReport(
            spec=spec, zero_count=len(gammas), S=S, M=M, residual=residual,
            residual_abs=abs(residual), normalizer=norm, ratio=abs(residual) / norm,
            per_zero_breakdown=breakdown, S_abs_error=S_err, x_source=x_source,
            perturbations=perturbations,
        )
        logger.info("zero_sum [%g, %g] x=%d y=%g: %d zeros, ratio=%.4g",
                    spec.T1, spec.T2, spec.x, spec.y, len(gammas), report.ratio)
        return report

    def select_x(self, T_bold: float, y: float, Theta: float) -> Tuple[int, str]:
        """Smallest prime of the admissible x range, else a witness prime above T L^{-Theta}."""
        try:
            return theorem2_prime_range(T_bold, y, Theta).primes[0], "prime_range"
        except EmptyRange as exc:
            t = max(2.0, T_bold * script_l(T_bold) ** (-Theta))
            logger.warning("Prime range empty at T=%g (%s); using witness prime above %g", T_bold, exc, t)
            return find_witness_prime(y, t).p, "witness_fallback"

    def sweep(self, T_list: Sequence[float], y: float, A: float, Theta: float,
              delta_fraction: float) -> List[ZeroSumReport]:
        """One zero-sum report per T with T2 = T(1 + delta_fraction), ordered by T_bold."""
        if not 0 < delta_fraction < 0.5:
            raise DomainError("delta_fraction must lie in (0, 1/2)")
        if any(T < 100 for T in T_list):
            raise DomainError("every T in a sweep must be at least 100")
        reports = []
        for T in sorted(T_list):
            T1, T2 = T, T * (1 + delta_fraction)
            x_source = "given"
            try:
                x, x_source = self.select_x((T1 + T2) / 2, y, Theta)
            except ZetaLabError as exc:
                logger.error("No x for T=%g: %s", T, exc)
                reports.append(ZeroSumReport.failed(ExperimentSpec(T1, T2, y, None, A=A, Theta=Theta), exc))
                continue
            spec = ExperimentSpec(T1=T1, T2=T2, y=y, x=x, A=A, Theta=Theta)
            try:
                zeros = self.zero_provider(T1, T2)
                reports.append(self.run(spec, zeros, x_source=x_source))
            except ZetaLabError as exc:
                logger.error("Sweep entry T=%g failed: %s", T, exc)
                reports.append(ZeroSumReport.failed(spec, exc, x_source))
        return sorted(reports, key=lambda r: r.spec.T_bold)

    def witness(self, T: float, y: float, C: float, nonvanish_threshold: float = 1e-3,
                zeros: Optional[ZeroTable] = None) -> WitnessResult:
        """
        Witness search: the first zero in [T, T(1+eps)] with |zeta(1/2 + i(gamma + y))| above threshold.

        Raises:
            EmptyWindow: If the window holds no zeros
        """
        if T < 50:
            raise DomainError(f"T must be at least 50, got {T}")
        if y == 0:
            raise DomainError("y must be nonzero")
        if not nonvanish_threshold > 0:
            raise DomainError("nonvanish_threshold must be positive")
        eps = epsilon_for(T, C)
        window = (T, T * (1 + eps))
        if zeros is None or not zeros.covers(*window):
            zeros = self.zero_provider(*window)
        in_window = [z.gamma for z in zeros if window[0] <= z.gamma <= window[1]]
        if not in_window:
            raise EmptyWindow(f"no zeros in [{window[0]}, {window[1]}]", window)

        shifted = []
        witness_gamma = None
        for gamma in in_window:
            magnitude = abs(self._shifted_zeta(gamma + y).value)
            shifted.append((gamma, magnitude))
            if witness_gamma is None and magnitude > nonvanish_threshold:
                witness_gamma = gamma
        return WitnessResult(T=T, y=y, C=C, epsilon=eps, window=window, zeros_in_window=tuple(in_window),
                             witness_gamma=witness_gamma, shifted_values=tuple(shifted))

    def n0y(self, T: float, y: float, threshold: float, zeros: ZeroTable) -> N0yCount:
        """
        Count zeros up to T and those whose shift by y stays above threshold.

        Raises:
            IncompleteZeroTable: If the table does not cover (0, T] from the first zero
        """
        starts_at_first = not zeros.zeros or zeros.zeros[0].index == 1
        if not (zeros.complete and zeros.t_min <= 14 and zeros.t_max >= T and starts_at_first):
            raise IncompleteZeroTable(f"zero table must be complete on (0, {T}]")
        nonvanishing = 0
        flagged = []
        total = 0
        for z in zeros:
            if z.gamma > T:
                break
            total += 1
            if abs(self._shifted_zeta(z.gamma + y).value) > threshold:
                nonvanishing += 1
            else:
                flagged.append(z.gamma)
        return N0yCount(total=total, nonvanishing=nonvanishing, flagged=tuple(flagged))


def zero_sum(spec: ExperimentSpec, zeros: ZeroTable, cfg: EvalConfig, threads: int = 1,
             keep_breakdown: bool = False) -> ZeroSumReport:
    return ZeroSumExperiment(cfg, threads=threads).run(spec, zeros, keep_breakdown=keep_breakdown)


def theorem1_witness(T: float, y: float, C: float, nonvanish_threshold: float, cfg: EvalConfig,
                     zeros: Optional[ZeroTable] = None, threads: int = 1) -> WitnessResult:
    return ZeroSumExperiment(cfg, threads=threads).witness(T, y, C, nonvanish_threshold, zeros)


def n0y_count(T: float, y: float, threshold: float, zeros: ZeroTable, cfg: EvalConfig) -> N0yCount:
    return ZeroSumExperiment(cfg).n0y(T, y, threshold, zeros)


def residual_sweep(T_list: Sequence[float], y: float, A: float, Theta: float, delta_fraction: float,
                   cfg: EvalConfig, threads: int = 1,
                   zero_provider: Optional[ZeroProvider] = None) -> List[ZeroSumReport]:
    return ZeroSumExperiment(cfg, threads=threads, zero_provider=zero_provider).sweep(
        T_list, y, A, Theta, delta_fraction)


def main_term_dominates(report: ZeroSumReport) -> DominanceCheck:
    """
    Check the implication used to deduce S != 0 from the main term.

    When |x^{-iy} - 1| > 1/sqrt(2) and ratio < |x^{-iy} - 1| Delta log T / (2 pi normalizer),
    the residual is smaller than |M|, so S cannot vanish.
    """
    spec = report.spec
    dev = abs(complex(np.exp(-1j * spec.y * math.log(spec.x))) - 1)
    threshold = dev * spec.Delta * math.log(spec.T_bold) / (2 * math.pi * report.normalizer)
    dominates = report.ratio < threshold
    implies = dev > WITNESS_THRESHOLD and dominates
    consistent = (not implies) or abs(report.S) > 0
    return DominanceCheck(witness_deviation=dev, is_witness=dev > WITNESS_THRESHOLD,
                          ratio_threshold=threshold, main_dominates=dominates,
                          implies_nonzero=implies, consistent=consistent)
