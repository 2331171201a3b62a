"""Base class for lemma checks and the shared tables they draw on."""

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Callable, Dict, Mapping, Optional, Tuple

from ..arithmetic import CoeffTable, VonMangoldtTable, coeff_dy, lambda_sieve
from ..config import EvalConfig
from ..diagnostics import CheckId, DiagnosticReport, DiagnosticSpec
from ..zero_locator import find_zeros
from ..zero_table import ZeroTable

DEFAULT_SLACK = 5.0


@dataclass
class LabTables:
    """
    Lazily built tables shared across checks.

    Sieves and coefficient tables are cached by limit; zero tables come from
    zero_provider (find_zeros by default).
    """
    cfg: EvalConfig = field(default_factory=EvalConfig)
    zero_provider: Optional[Callable[[float, float], ZeroTable]] = None
    _lambda: Dict[int, VonMangoldtTable] = field(default_factory=dict, repr=False)
    _coeffs: Dict[Tuple[float, int], CoeffTable] = field(default_factory=dict, repr=False)

    def von_mangoldt(self, limit: int) -> VonMangoldtTable:
        for size, table in self._lambda.items():
            if size >= limit:
                return table
        table = lambda_sieve(limit)
        self._lambda[limit] = table
        return table

    def coefficients(self, y: float, limit: int) -> CoeffTable:
        key = (y, limit)
        if key not in self._coeffs:
            self._coeffs[key] = coeff_dy(y, limit, self.von_mangoldt(limit))
        return self._coeffs[key]

    def zeros(self, lo: float, hi: float) -> ZeroTable:
        if self.zero_provider is not None:
            return self.zero_provider(lo, hi)
        return find_zeros(lo, hi, self.cfg)


class LemmaCheck(ABC):
    """A numerical check of one lemma's quantitative claim."""

    check_id: CheckId
    informational = False
    # when set, replaces the configured slack as the pass threshold
    pass_ratio: Optional[float] = None

    @abstractmethod
    def measure(self, params: Mapping[str, float], tables: LabTables, cfg: EvalConfig) -> Tuple[float, float, str]:
        """
        Measure the lemma's quantity.

        Args:
            params: Check parameters
            tables: Shared tables
            cfg: Evaluation thresholds

        Returns:
            Tuple of (observed, predicted_bound, details)

        Raises:
            DomainError: If the lemma's preconditions are violated
        """
        pass

    def run(self, spec: DiagnosticSpec, tables: LabTables, cfg: EvalConfig,
            slack: float = DEFAULT_SLACK) -> DiagnosticReport:
        observed, bound, details = self.measure(spec.params, tables, cfg)
        ratio = observed / bound if bound > 0 else math.inf
        threshold = slack if self.pass_ratio is None else self.pass_ratio
        passed = True if self.informational else ratio <= threshold
        return DiagnosticReport(check_id=self.check_id, observed=observed, predicted_bound=bound,
                                ratio=ratio, passed=passed, details=details, params=spec.params)
