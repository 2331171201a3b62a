"""Critical-line zero ordinates and the tables that hold them."""

from dataclasses import dataclass, field
from enum import Enum
from typing import List, Sequence, Tuple

import numpy as np

# Ordinates closer than this are flagged rather than treated as a double zero
CLOSE_PAIR_GAP = 1e-6


class ZeroSource(Enum):
    COMPUTED = "computed"
    IMPORTED = "imported"


@dataclass(frozen=True)
class ZeroOrdinate:
    """A zero rho = 1/2 + i gamma."""
    gamma: float
    index: int  # 1-based rank among positive ordinates
    refinement_residual: float  # |Z(gamma)| after refinement
    source: ZeroSource = ZeroSource.COMPUTED

    def __post_init__(self):
        if not self.gamma > 0:
            raise ValueError(f"Zero ordinate must be positive, got {self.gamma}")
        if self.index < 1:
            raise ValueError(f"Zero index must be positive, got {self.index}")

    @property
    def rho(self) -> complex:
        return complex(0.5, self.gamma)


@dataclass(frozen=True)
class ZeroTable:
    """
    Ordered zeros with ordinates in [t_min, t_max].

    complete is True only when the zero count on the range was verified
    against the Riemann-von Mangoldt count.
    """
    zeros: Tuple[ZeroOrdinate, ...]
    t_min: float
    t_max: float
    complete: bool
    close_pairs: Tuple[Tuple[float, float], ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "zeros", tuple(self.zeros))
        gammas = [z.gamma for z in self.zeros]
        if any(b <= a for a, b in zip(gammas, gammas[1:])):
            raise ValueError("Zero ordinates must be strictly increasing")
        indices = [z.index for z in self.zeros]
        if any(b != a + 1 for a, b in zip(indices, indices[1:])):
            raise ValueError("Zero indices must be consecutive")
        if not self.close_pairs:
            pairs = tuple((a, b) for a, b in zip(gammas, gammas[1:]) if b - a < CLOSE_PAIR_GAP)
            object.__setattr__(self, "close_pairs", pairs)

    def __len__(self) -> int:
        return len(self.zeros)

    def __iter__(self):
        return iter(self.zeros)

    @property
    def gammas(self) -> np.ndarray:
        return np.array([z.gamma for z in self.zeros], dtype=float)

    def covers(self, lo: float, hi: float) -> bool:
        """True if the table is complete on a range containing [lo, hi]."""
        return self.complete and self.t_min <= lo and self.t_max >= hi

    def between(self, lo: float, hi: float) -> List[ZeroOrdinate]:
        """Zeros with lo < gamma < hi."""
        return [z for z in self.zeros if lo < z.gamma < hi]

    def nearest_distance(self, t: float) -> float:
        """Distance from t to the closest ordinate (inf for an empty table)."""
        if not self.zeros:
            return float("inf")
        return float(np.min(np.abs(self.gammas - t)))

    @classmethod
    def from_ordinates(cls,
                       gammas: Sequence[float],
                       t_min: float,
                       t_max: float,
                       complete: bool,
                       first_index: int = 1,
                       source: ZeroSource = ZeroSource.IMPORTED,
                       residuals: Sequence[float] = None) -> "ZeroTable":
        residuals = residuals if residuals is not None else [0.0] * len(gammas)
        zeros = tuple(
            ZeroOrdinate(gamma=float(g), index=first_index + k, refinement_residual=float(r), source=source)
            for k, (g, r) in enumerate(zip(gammas, residuals))
        )
        return cls(zeros=zeros, t_min=t_min, t_max=t_max, complete=complete)
