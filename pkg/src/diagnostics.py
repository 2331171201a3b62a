"""Diagnostic specifications and reports for the lemma checks."""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Mapping, Tuple, Union

Number = Union[int, float]


class CheckId(Enum):
    SP_INTEGRAL = "sp_integral"
    CGG_INTEGRAL = "cgg_integral"
    MV_LOCAL = "mv_local"
    CHI_ASYM = "chi_asym"
    LINDELOF_SCAN = "lindelof_scan"
    SERIES_BOUND = "series_bound"
    TECHNICAL_BOUND = "technical_bound"
    SUMMATION_BOUND = "summation_bound"
    DIRICHLET_CONSISTENCY = "dirichlet_consistency"


# Parameters each check needs; optional ones get defaults in the check itself
REQUIRED_PARAMS: Dict[CheckId, Tuple[str, ...]] = {
    CheckId.SP_INTEGRAL: ("a", "b", "sigma", "u", "m"),
    CheckId.CGG_INTEGRAL: ("c", "T1", "T2", "y", "v", "j"),
    CheckId.MV_LOCAL: ("sigma", "t"),
    CheckId.CHI_ASYM: ("sigma", "t"),
    CheckId.LINDELOF_SCAN: ("t_lo", "t_hi"),
    CheckId.SERIES_BOUND: ("x", "y"),
    CheckId.TECHNICAL_BOUND: ("x", "t"),
    CheckId.SUMMATION_BOUND: ("t", "t_prime", "y"),
    CheckId.DIRICHLET_CONSISTENCY: ("sigma", "t", "y", "N"),
}


@dataclass(frozen=True)
class DiagnosticSpec:
    """A check identifier and its named parameters."""
    check_id: CheckId
    params: Mapping[str, Number] = field(default_factory=dict)

    def __post_init__(self):
        if not isinstance(self.check_id, CheckId):
            object.__setattr__(self, "check_id", CheckId(self.check_id))
        missing = [name for name in REQUIRED_PARAMS[self.check_id] if name not in self.params]
        if missing:
            raise ValueError(f"{self.check_id.value} is missing parameters: {missing}")
        object.__setattr__(self, "params", dict(self.params))


@dataclass(frozen=True)
class DiagnosticReport:
    """Observed quantity against a lemma's envelope taken with constant 1."""
    check_id: CheckId
    observed: float
    predicted_bound: float
    ratio: float
    passed: bool
    details: str = ""
    params: Mapping[str, Number] = field(default_factory=dict)

    def __post_init__(self):
        if self.observed < 0 or (not math.isnan(self.ratio) and self.ratio < 0):
            raise ValueError("observed and ratio must be non-negative")

    def to_dict(self) -> dict:
        return {
            "check_id": self.check_id.value,
            "observed": self.observed,
            "predicted_bound": self.predicted_bound,
            "ratio": self.ratio,
            "pass": self.passed,
            "details": self.details,
            "params": dict(self.params),
        }
