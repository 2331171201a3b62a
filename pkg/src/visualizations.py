"""Residual-trend plot for zero-sum sweeps."""

import logging
from pathlib import Path
from typing import Optional, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .errors import ReportIOError  # noqa: E402
from .zero_sum import ZeroSumReport  # noqa: E402

logger = logging.getLogger(__name__)


class ResidualVisualizer:
    """
    Plot normalised residuals |S - M| / envelope against the midpoint height.
    """

    @staticmethod
    def create_trend_svg(sweeps: Sequence[Sequence[ZeroSumReport]],
                         output_path: str,
                         labels: Optional[Sequence[str]] = None) -> Path:
        """
        Write a standalone SVG with one line per sweep on log-log axes.

        Failed entries (NaN ratio) are skipped. Each line carries the id
        "sweep-<k>" in the SVG.

        Args:
            sweeps: One sequence of reports per sweep
            output_path: SVG file to write
            labels: Legend labels, default "y=<y>, A=<A>, Theta=<Theta>"

        Returns:
            Path of the written file
        """
        if not sweeps:
            raise ValueError("Need at least one sweep to plot")
        fig, ax = plt.subplots(figsize=(8, 5))

        for k, reports in enumerate(sweeps):
            points = sorted((r.spec.T_bold, r.ratio) for r in reports if r.error is None and r.ratio > 0)
            if labels is not None:
                label = labels[k]
            elif reports:
                spec = reports[0].spec
                label = f"y={spec.y:g}, A={spec.A:g}, Theta={spec.Theta:g}"
            else:
                label = f"sweep {k}"
            heights = [p[0] for p in points]
            ratios = [p[1] for p in points]
            line, = ax.plot(heights, ratios, marker="o", label=label, linewidth=1.5, markersize=4)
            line.set_gid(f"sweep-{k}")

        ax.set_xscale("log")
        ax.set_yscale("log")
        ax.set_xlabel("T = (T1 + T2) / 2")
        ax.set_ylabel("|S - M| / envelope")
        ax.set_title("Normalised residual of the shifted zero sum")
        ax.grid(True, which="both", alpha=0.3)
        ax.legend(loc="best")

        path = Path(output_path)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            fig.savefig(path, format="svg", bbox_inches="tight")
        except OSError as exc:
            raise ReportIOError(f"cannot write plot to {path}: {exc}") from exc
        finally:
            plt.close(fig)
        logger.info("Residual trend plot saved to %s", path)
        return path
