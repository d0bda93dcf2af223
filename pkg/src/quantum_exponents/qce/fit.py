"""
Constrained exponent fit: mean_growth(n) = lambda + c_v / n with lambda
shared by every direction.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from ..exceptions import UnderdeterminedFitError
from ..telemetry import log_event
from .trace import TraceRecord

logger = logging.getLogger(__name__)

Point = Tuple[int, float]


@dataclass(frozen=True)
class ExponentEstimate:
    """
    Result of the shared-asymptote fit.

    Attributes:
        lambda_: shared asymptote
        per_direction_transient: c_v for each direction tag
        residual: RMS of the fit residuals
        n_range_used: smallest and largest n that entered the fit
        points_used: number of (n, value) pairs in the fit
    """

    lambda_: float
    per_direction_transient: Dict[str, float] = field(default_factory=dict)
    residual: float = 0.0
    n_range_used: Tuple[int, int] = (0, 0)
    points_used: int = 0

    def curve(self, direction: str, n: np.ndarray) -> np.ndarray:
        """Fitted curve lambda + c_v / n for one direction."""
        return self.lambda_ + self.per_direction_transient[direction] / np.asarray(n, dtype=float)

    def to_dict(self) -> dict:
        return {
            "lambda": self.lambda_,
            "per_direction_transient": dict(self.per_direction_transient),
            "residual": self.residual,
            "n_range_used": list(self.n_range_used),
            "points_used": self.points_used,
        }


def growth_points(records: Sequence[TraceRecord]) -> List[Point]:
    """(n, mean_growth) for records that passed every guard."""
    return [(r.n, r.mean_growth) for r in records if r.usable and r.mean_growth is not None]


def fit_exponent(
    traces: Mapping[str, Sequence[Point]],
    n_min: int = 2,
    n_max: Optional[int] = None,
) -> ExponentEstimate:
    """
    Least-squares fit of lambda + c_v / n over all directions at once.

    Args:
        traces: direction tag -> sequence of (n, mean_growth)
        n_min: smallest n used (default 2)
        n_max: largest n used (default: all)

    Raises:
        UnderdeterminedFitError: no directions, or a direction with fewer
            than two points in the window
    """
    if not traces:
        raise UnderdeterminedFitError("At least one direction is required for the exponent fit")

    tags = list(traces)
    windowed: Dict[str, List[Point]] = {}
    for tag in tags:
        points = [
            (int(n), float(value))
            for n, value in traces[tag]
            if value is not None and n >= max(n_min, 1) and (n_max is None or n <= n_max)
        ]
        if len(points) < 2:
            raise UnderdeterminedFitError(
                f"Direction {tag} has {len(points)} usable points in the fit window; need 2",
                direction=tag,
                points=len(points),
            )
        windowed[tag] = points

    rows = sum(len(p) for p in windowed.values())
    design = np.zeros((rows, 1 + len(tags)))
    target = np.zeros(rows)
    row = 0
    for column, tag in enumerate(tags, start=1):
        for n, value in windowed[tag]:
            design[row, 0] = 1.0
            design[row, column] = 1.0 / n
            target[row] = value
            row += 1

    solution, _, rank, _ = np.linalg.lstsq(design, target, rcond=None)
    if rank < design.shape[1]:
        raise UnderdeterminedFitError(
            f"Fit design matrix has rank {rank} < {design.shape[1]} parameters",
            rank=int(rank),
        )
    residual = float(np.sqrt(np.mean((design @ solution - target) ** 2)))
    all_n = [n for points in windowed.values() for n, _ in points]

    estimate = ExponentEstimate(
        lambda_=float(solution[0]),
        per_direction_transient={tag: float(c) for tag, c in zip(tags, solution[1:])},
        residual=residual,
        n_range_used=(min(all_n), max(all_n)),
        points_used=rows,
    )
    log_event("exponent_fit", **estimate.to_dict())
    return estimate


def fit_records(
    traces: Mapping[str, Sequence[TraceRecord]],
    n_min: int = 2,
    n_max: Optional[int] = None,
) -> ExponentEstimate:
    """fit_exponent over trace records, dropping halted and degenerate steps."""
    return fit_exponent({tag: growth_points(records) for tag, records in traces.items()},
                        n_min=n_min, n_max=n_max)


def growth_slope(records: Sequence[TraceRecord], window: Tuple[int, int] = (100, 300)) -> float:
    """
    Least-squares slope of <D_n> against n over an inclusive window.

    Raises:
        UnderdeterminedFitError: fewer than two records in the window
    """
    lo, hi = window
    points = [(r.n, r.mean_Dn) for r in records if r.mean_Dn is not None and lo <= r.n <= hi]
    if len(points) < 2:
        raise UnderdeterminedFitError(
            f"Slope window [{lo}, {hi}] holds {len(points)} points; need 2",
            window=window,
        )
    n, values = np.array(points, dtype=float).T
    slope, _ = np.polyfit(n, values, 1)
    return float(slope)
