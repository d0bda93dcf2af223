"""
Growth-index traces <D_n> and (1/n)<D_n - D_0> with saturation and
unitarity guards.
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..grid import (
    DEFAULT_LOG_FLOOR,
    DEFAULT_SATURATION_RATIO,
    RealField,
    WaveField,
    directional_derivative,
    log_magnitude,
)
from ..heisenberg import HeisenbergRun
from ..telemetry import log_event
from ..utils import direction_tag

logger = logging.getLogger(__name__)

STATUS_OK = "ok"
STATUS_SATURATION = "halted:saturation"
STATUS_UNITARITY = "halted:unitarity"
STATUS_DEGENERATE = "degenerate"
STATUS_COMPLETED = "completed"

Direction = Union[float, Sequence[float]]


@dataclass(frozen=True)
class TraceGuards:
    """Stopping and exclusion thresholds for a trace."""

    saturation_ratio: float = DEFAULT_SATURATION_RATIO
    unitarity_eps: float = 1e-8
    log_floor: float = DEFAULT_LOG_FLOOR


@dataclass(frozen=True)
class TraceRecord:
    """
    Diagnostics of one step n along one direction.

    mean_growth is None at n = 0; mean_Dn is None only on a degenerate
    record where every point was excluded.
    """

    direction: str
    n: int
    mean_Dn: Optional[float]
    mean_growth: Optional[float]
    excluded: int
    saturation_fraction: float
    max_difference_ratio: float
    roundtrip_error: float
    halted: bool = False
    status: str = STATUS_OK

    @property
    def usable(self) -> bool:
        return self.status == STATUS_OK


def _as_tuple(v: Direction) -> Tuple[float, ...]:
    return (float(v),) if np.isscalar(v) else tuple(float(c) for c in v)


def _masked(field: RealField, region: Optional[np.ndarray]) -> RealField:
    if region is None:
        return field
    return RealField(field.grid, field.values, field.valid_mask & region)


class _DirectionState:
    def __init__(self, v: Tuple[float, ...]):
        self.v = v
        self.tag = direction_tag(v)
        self.records: List[TraceRecord] = []
        self.baseline: Optional[Tuple[np.ndarray, np.ndarray]] = None
        self.active = True


def _measure(
    state: _DirectionState,
    gamma: WaveField,
    n: int,
    roundtrip_error: float,
    guards: TraceGuards,
    region: Optional[np.ndarray],
) -> TraceRecord:
    derivative = directional_derivative(gamma, state.v, guards.saturation_ratio)
    logs, valid = log_magnitude(_masked(derivative.field, region), guards.log_floor)
    count = int(np.count_nonzero(valid))
    excluded = gamma.grid.point_count - count
    common = dict(
        direction=state.tag,
        n=n,
        excluded=excluded,
        saturation_fraction=derivative.saturation_fraction,
        max_difference_ratio=derivative.max_difference_ratio,
        roundtrip_error=roundtrip_error,
    )
    if count == 0:
        return TraceRecord(mean_Dn=None, mean_growth=None, halted=True,
                           status=STATUS_DEGENERATE, **common)

    mean_dn = float(np.mean(logs[valid]))
    if n == 0:
        state.baseline = (logs, valid)
        return TraceRecord(mean_Dn=mean_dn, mean_growth=None, **common)

    base_logs, base_valid = state.baseline
    joint = valid & base_valid
    if not np.any(joint):
        return TraceRecord(mean_Dn=mean_dn, mean_growth=None, halted=True,
                           status=STATUS_DEGENERATE, **common)
    mean_growth = float(np.mean(logs[joint] - base_logs[joint])) / n

    status = STATUS_OK
    if roundtrip_error > guards.unitarity_eps:
        status = STATUS_UNITARITY
    elif derivative.saturation_fraction > 0.0:
        status = STATUS_SATURATION
    return TraceRecord(mean_Dn=mean_dn, mean_growth=mean_growth,
                       halted=status != STATUS_OK, status=status, **common)


def run_traces(
    run: HeisenbergRun,
    directions: Sequence[Direction],
    n_max: Optional[int] = None,
    guards: TraceGuards = TraceGuards(),
    region: Optional[np.ndarray] = None,
) -> Dict[str, List[TraceRecord]]:
    """
    Trace several directions over one Heisenberg run.

    gamma_n is computed once per n and shared; each direction stops on its
    own at the first halted or degenerate record.

    Args:
        run: Heisenberg run supplying gamma_n
        directions: direction vectors v (normalized internally)
        n_max: last step (defaults to run.n_max); must be >= 1
        guards: saturation, unitarity and log-floor thresholds
        region: optional boolean mask restricting all averages

    Returns:
        Mapping from direction tag to its records, in step order
    """
    n_max = run.n_max if n_max is None else n_max
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    if n_max > run.n_max:
        raise ValueError(f"n_max {n_max} exceeds the run's n_max {run.n_max}")
    states = [_DirectionState(_as_tuple(v)) for v in directions]
    if not states:
        raise ValueError("At least one direction is required")

    for n in range(n_max + 1):
        active = [s for s in states if s.active]
        if not active:
            break
        step = run.evolve(n)
        for state in active:
            record = _measure(state, step.gamma, n, step.roundtrip_error, guards, region)
            state.records.append(record)
            log_event(
                "trace_step",
                level=logging.DEBUG,
                direction=record.direction,
                n=n,
                mean_Dn=record.mean_Dn,
                mean_growth=record.mean_growth,
                saturation_fraction=record.saturation_fraction,
            )
            if record.status == STATUS_DEGENERATE:
                state.active = False
                log_event("trace_degenerate", direction=record.direction, n=n,
                          excluded=record.excluded)
            elif record.halted:
                state.active = False
                log_event("trace_halted", direction=record.direction, n=n,
                          reason=record.status, roundtrip_error=record.roundtrip_error,
                          saturation_fraction=record.saturation_fraction)

    return {s.tag: s.records for s in states}


def run_trace(
    run: HeisenbergRun,
    v: Direction,
    n_max: Optional[int] = None,
    guards: TraceGuards = TraceGuards(),
    region: Optional[np.ndarray] = None,
) -> List[TraceRecord]:
    """Trace a single direction (see run_traces)."""
    return next(iter(run_traces(run, [v], n_max, guards, region).values()))


def halt_reason(records: Sequence[TraceRecord]) -> str:
    """Status of the terminal record, or 'completed' if no guard fired."""
    if records and records[-1].status != STATUS_OK:
        return records[-1].status
    return STATUS_COMPLETED


def growth_index_field(
    run: HeisenbergRun,
    v: Direction,
    n: int,
    guards: TraceGuards = TraceGuards(),
) -> RealField:
    """D_n(x) = log|Re v.grad gamma_n(x)| with the floor validity mask."""
    derivative = directional_derivative(run.gamma(n), _as_tuple(v), guards.saturation_ratio)
    logs, valid = log_magnitude(derivative.field, guards.log_floor)
    return RealField(run.grid, logs, valid)


def telescoping_terms(
    run: HeisenbergRun,
    v: Direction,
    n: int,
    guards: TraceGuards = TraceGuards(),
) -> List[RealField]:
    """
    Per-step log ratios D_k - D_{k-1} for k = 1..n.

    Their sum equals D_n - D_0 on every point valid at all steps.
    """
    fields = [growth_index_field(run, v, k, guards) for k in range(n + 1)]
    return [
        RealField(run.grid, fields[k].values - fields[k - 1].values,
                  fields[k].valid_mask & fields[k - 1].valid_mask)
        for k in range(1, n + 1)
    ]
