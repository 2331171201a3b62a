"""Zero-table text files and the on-disk zero cache."""

import logging
import re
from pathlib import Path
from typing import List, Optional

from .complex_eval import hardy_z
from .config import EvalConfig
from .errors import CacheMiss, OrderViolation, ParseError, ValidationFailure
from .zero_locator import RVM_BAND, count_zeros_rvm
from .zero_table import ZeroSource, ZeroTable

logger = logging.getLogger(__name__)

IMPORT_Z_TOLERANCE = 1e-4
_DIRECTIVE = re.compile(r"#\s*(first_index|complete)\s*[=:]\s*(\S+)")


def _read_ordinates(path: Path):
    """Parse ordinates and header directives, enforcing strict ascent."""
    gammas: List[float] = []
    directives = {}
    previous = None
    with open(path, "r", encoding="ascii", newline="") as fh:
        for line_number, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n").rstrip("\r").strip()
            if not line:
                continue
            if line.startswith("#"):
                match = _DIRECTIVE.match(line)
                if match:
                    directives[match.group(1)] = match.group(2)
                continue
            try:
                gamma = float(line)
            except ValueError:
                raise ParseError(f"not a decimal ordinate: {line!r}", line_number) from None
            if not gamma > 0:
                raise ParseError(f"ordinate must be positive: {line!r}", line_number)
            if previous is not None and gamma <= previous:
                raise OrderViolation(f"ordinate {gamma} does not exceed {previous}", line_number)
            gammas.append(gamma)
            previous = gamma
    return gammas, directives


def load_zero_table(path: str, t_min: float, t_max: float, cfg: Optional[EvalConfig] = None) -> ZeroTable:
    """
    Load zero ordinates from a text file, one per line.

    Lines starting with '#' are comments. Ordinates are ranked by their
    position in the file (offset by a '# first_index=K' directive when
    present), filtered to [t_min, t_max] and checked with |Z(gamma)| < 1e-4.

    Args:
        path: Zero file
        t_min: Lower ordinate bound (inclusive)
        t_max: Upper ordinate bound (inclusive)
        cfg: Evaluation thresholds for the validation pass

    Returns:
        ZeroTable with source imported

    Raises:
        FileNotFoundError: If the file does not exist
        ParseError: On a malformed line (line number reported)
        OrderViolation: If ordinates are not strictly increasing
        ValidationFailure: Listing ordinates where |Z(gamma)| is too large
    """
    cfg = cfg or EvalConfig()
    file_path = Path(path)
    if not file_path.exists():
        raise FileNotFoundError(f"Zero table not found: {file_path}")

    gammas, directives = _read_ordinates(file_path)
    first_index = int(directives.get("first_index", 1))
    ranked = [(first_index + k, g) for k, g in enumerate(gammas) if t_min <= g <= t_max]

    residuals = []
    offending = []
    for _, gamma in ranked:
        residual = abs(hardy_z(gamma, cfg).value.real)
        residuals.append(residual)
        if residual >= IMPORT_Z_TOLERANCE:
            offending.append(gamma)
    if offending:
        raise ValidationFailure(
            f"{len(offending)} ordinates fail |Z(gamma)| < {IMPORT_Z_TOLERANCE:g}", offending
        )

    complete = False
    if ranked:
        last_index = ranked[-1][0]
        complete = t_max >= 10 and abs(last_index - count_zeros_rvm(max(t_max, 10.0)).main) <= RVM_BAND
        if directives.get("complete", "true").lower() == "false":
            complete = False

    table = ZeroTable.from_ordinates(
        [g for _, g in ranked], t_min=t_min, t_max=t_max, complete=complete,
        first_index=ranked[0][0] if ranked else 1, source=ZeroSource.IMPORTED, residuals=residuals,
    )
    logger.info("Loaded %d zeros from %s (complete=%s)", len(table), file_path, complete)
    return table


def write_zero_table(path: str, table: ZeroTable) -> Path:
    """Write a table as ASCII text, LF line endings, 12 decimals per ordinate."""
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    first_index = table.zeros[0].index if table.zeros else 1
    with open(out, "w", encoding="ascii", newline="\n") as fh:
        fh.write(f"# zeros t_min={table.t_min!r} t_max={table.t_max!r}\n")
        fh.write(f"# first_index={first_index}\n")
        fh.write(f"# complete={'true' if table.complete else 'false'}\n")
        for zero in table.zeros:
            fh.write(f"{zero.gamma:.12f}\n")
    return out


def _format_height(t: float) -> str:
    return f"{t:.6f}".rstrip("0").rstrip(".")


class ZeroCache:
    """Directory of zero tables named zeros_<t_lo>_<t_hi>.txt."""

    def __init__(self, cache_dir: str):
        if not cache_dir:
            raise ValueError("A cache directory is required")
        self.cache_dir = Path(cache_dir)

    def path_for(self, t_lo: float, t_hi: float) -> Path:
        return self.cache_dir / f"zeros_{_format_height(t_lo)}_{_format_height(t_hi)}.txt"

    def store(self, table: ZeroTable) -> Path:
        path = write_zero_table(self.path_for(table.t_min, table.t_max), table)
        logger.info("Cached %d zeros at %s", len(table), path)
        return path

    def load(self, t_lo: float, t_hi: float, cfg: Optional[EvalConfig] = None) -> ZeroTable:
        """
        Load a cached table, validating it before use.

        Raises:
            CacheMiss: If no file exists for the range
            ValidationFailure: If the file is malformed or fails validation
        """
        path = self.path_for(t_lo, t_hi)
        if not path.exists():
            raise CacheMiss(f"No cached zeros for [{t_lo}, {t_hi}] at {path}")
        try:
            return load_zero_table(str(path), t_lo, t_hi, cfg)
        except (ParseError, OrderViolation) as exc:
            raise ValidationFailure(f"Corrupted cache file {path}: {exc}") from exc


def cache_zeros(cache_dir: str, table: ZeroTable) -> Path:
    return ZeroCache(cache_dir).store(table)


def load_cached(cache_dir: str, t_lo: float, t_hi: float, cfg: Optional[EvalConfig] = None) -> ZeroTable:
    return ZeroCache(cache_dir).load(t_lo, t_hi, cfg)
