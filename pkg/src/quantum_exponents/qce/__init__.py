"""
Quantum characteristic exponent estimation: guarded growth-index traces,
the shared-asymptote fit and log-log scaling.
"""
from .fit import ExponentEstimate, fit_exponent, fit_records, growth_points, growth_slope
from .scaling import loglog_factor, loglog_scaled, relative_spread
from .trace import (
    STATUS_COMPLETED,
    STATUS_DEGENERATE,
    STATUS_OK,
    STATUS_SATURATION,
    STATUS_UNITARITY,
    TraceGuards,
    TraceRecord,
    growth_index_field,
    halt_reason,
    run_trace,
    run_traces,
    telescoping_terms,
)

__all__ = [
    'ExponentEstimate',
    'fit_exponent',
    'fit_records',
    'growth_points',
    'growth_slope',
    'loglog_factor',
    'loglog_scaled',
    'relative_spread',
    'STATUS_COMPLETED',
    'STATUS_DEGENERATE',
    'STATUS_OK',
    'STATUS_SATURATION',
    'STATUS_UNITARITY',
    'TraceGuards',
    'TraceRecord',
    'growth_index_field',
    'halt_reason',
    'run_trace',
    'run_traces',
    'telescoping_terms',
]
