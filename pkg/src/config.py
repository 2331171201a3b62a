"""Configuration for zeta evaluation and experiment runs."""

import json
import os
from dataclasses import dataclass, field, fields, asdict
from pathlib import Path
from typing import Optional


CACHE_DIR_ENV = "ZGL_CACHE_DIR"


@dataclass(frozen=True)
class EvalConfig:
    """Method thresholds for zeta evaluation."""

    em_terms: int = 30  # Minimum Euler-Maclaurin truncation N
    em_bernoulli_order: int = 12  # Number of Bernoulli correction terms
    rs_correction_terms: int = 2  # Riemann-Siegel corrections C0..C_k, k in [0, 4]
    method_switch_height: float = 50.0  # Riemann-Siegel is considered above this t
    target_abs_error: float = 1e-6

    def __post_init__(self):
        """Validate configuration."""
        if self.em_terms <= 0:
            raise ValueError("em_terms must be positive")
        if self.em_bernoulli_order <= 0:
            raise ValueError("em_bernoulli_order must be positive")
        if not 0 <= self.rs_correction_terms <= 4:
            raise ValueError("rs_correction_terms must be between 0 and 4")
        if self.method_switch_height < 10:
            raise ValueError("method_switch_height must be at least 10")
        if not self.target_abs_error > 0:
            raise ValueError("target_abs_error must be positive")


@dataclass(frozen=True)
class RunConfig:
    """Configuration for CLI runs: evaluation settings plus experiment tolerances."""

    eval: EvalConfig = field(default_factory=EvalConfig)
    zero_tolerance: float = 1e-7  # Max |Z(gamma)| accepted for a computed zero
    nonvanish_threshold: float = 1e-3
    slack: float = 5.0  # Lemma-lab pass threshold on ratio
    zero_cache_dir: Optional[str] = None
    output_format: str = "csv"  # "csv" or "json"
    threads: int = 1

    def __post_init__(self):
        """Validate configuration."""
        if not self.zero_tolerance > 0:
            raise ValueError("zero_tolerance must be positive")
        if not self.nonvanish_threshold > 0:
            raise ValueError("nonvanish_threshold must be positive")
        if not self.slack > 0:
            raise ValueError("slack must be positive")
        if self.output_format not in ("csv", "json"):
            raise ValueError("output_format must be 'csv' or 'json'")
        if self.threads < 1:
            raise ValueError("threads must be at least 1")
        if self.zero_cache_dir is not None:
            cache = Path(self.zero_cache_dir)
            if cache.exists() and not os.access(cache, os.W_OK):
                raise ValueError(f"Cache directory is not writable: {cache}")

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        """
        Build a RunConfig from a flat or nested dictionary.

        EvalConfig fields may appear at the top level or under an "eval" key.

        Args:
            data: Parsed configuration mapping

        Returns:
            Validated RunConfig

        Raises:
            ValueError: If an unknown key is present or a value is invalid
        """
        eval_names = {f.name for f in fields(EvalConfig)}
        run_names = {f.name for f in fields(cls)} - {"eval"}

        eval_kwargs = dict(data.get("eval", {}))
        run_kwargs = {}
        for key, value in data.items():
            if key == "eval":
                continue
            if key in eval_names:
                eval_kwargs[key] = value
            elif key in run_names:
                run_kwargs[key] = value
            else:
                raise ValueError(f"Unknown configuration key: {key}")
        unknown = set(eval_kwargs) - eval_names
        if unknown:
            raise ValueError(f"Unknown eval configuration keys: {sorted(unknown)}")

        if run_kwargs.get("zero_cache_dir") is None:
            run_kwargs["zero_cache_dir"] = os.environ.get(CACHE_DIR_ENV)
        return cls(eval=EvalConfig(**eval_kwargs), **run_kwargs)

    @classmethod
    def from_json(cls, path: str) -> "RunConfig":
        """Load a RunConfig from a JSON file."""
        config_path = Path(path)
        if not config_path.exists():
            raise FileNotFoundError(f"Config file not found: {config_path}")
        with open(config_path) as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ValueError(f"Config file is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise ValueError("Config file must contain a JSON object")
        return cls.from_dict(data)

    def to_dict(self) -> dict:
        return asdict(self)
