"""Exception hierarchy shared by the evaluation, search and experiment modules."""

from typing import Optional, Sequence


class ZetaLabError(Exception):
    """Base class for every error raised by this package."""


# Precondition / contract failures

class DomainError(ZetaLabError, ValueError):
    """An argument lies outside the range an operation supports."""


class PoleProximity(DomainError):
    """The evaluation point is too close to a pole."""


class ZeroProximity(DomainError):
    """The evaluation point is too close to a supplied zero."""

    def __init__(self, message: str, gamma: Optional[float] = None):
        super().__init__(message)
        self.gamma = gamma


class MissingZeroCoverage(DomainError):
    """A zero list does not cover the neighbourhood an operation needs."""


class LimitExceeded(DomainError):
    """A table or sieve limit is exceeded."""


class ParseError(ZetaLabError, ValueError):
    """A zero-table file contains a malformed line."""

    def __init__(self, message: str, line_number: int):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class OrderViolation(ZetaLabError, ValueError):
    """Ordinates in a zero table are not strictly increasing."""

    def __init__(self, message: str, line_number: Optional[int] = None):
        super().__init__(message if line_number is None else f"line {line_number}: {message}")
        self.line_number = line_number


class ValidationFailure(ZetaLabError, ValueError):
    """Imported ordinates fail the |Z(gamma)| check."""

    def __init__(self, message: str, offending: Sequence[float] = ()):
        super().__init__(message)
        self.offending = list(offending)


class EmptyRange(ZetaLabError, ValueError):
    """A prime range is degenerate or holds no primes."""

    def __init__(self, message: str, lo: float = float("nan"), hi: float = float("nan")):
        super().__init__(message)
        self.lo = lo
        self.hi = hi


class EmptyWindow(ZetaLabError, ValueError):
    """A search window holds no zeros."""

    def __init__(self, message: str, window: tuple = ()):
        super().__init__(message)
        self.window = window


class IncompleteZeroTable(ZetaLabError, ValueError):
    """A zero table is not verified complete on the range an operation sums over."""


# Computational failures

class AccuracyUnreachable(ZetaLabError, RuntimeError):
    """The configured method cannot meet the requested accuracy."""


class OverflowGuard(ZetaLabError, RuntimeError):
    """The height is beyond what double precision supports here."""


class NonConvergence(ZetaLabError, RuntimeError):
    """An iteration failed to converge."""


class NoWitnessFound(ZetaLabError, RuntimeError):
    """No prime in the window has the required deviation."""

    def __init__(self, message: str, window: tuple, max_deviation: float):
        super().__init__(f"{message} (window={window}, max deviation={max_deviation:.6g})")
        self.window = window
        self.max_deviation = max_deviation


class QuadratureFailure(ZetaLabError, RuntimeError):
    """An integral's error estimate exceeds the requested tolerance."""


class EvaluationFailure(ZetaLabError, RuntimeError):
    """A zeta evaluation inside an experiment failed."""


class CacheMiss(ZetaLabError, RuntimeError):
    """No cached zero table exists for a range."""


class ReportIOError(ZetaLabError, RuntimeError):
    """Writing a report or plot failed."""
