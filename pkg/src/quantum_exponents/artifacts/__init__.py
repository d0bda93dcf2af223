"""
Experiment artifacts: trace CSVs, run manifests and SVG charts.
"""
from .chart import QUANTITY_LABELS, emit_chart
from .writer import (
    ensure_output_dir,
    read_manifest,
    read_trace_csv,
    trace_rows,
    write_manifest,
    write_trace_csv,
)

__all__ = [
    'QUANTITY_LABELS',
    'emit_chart',
    'ensure_output_dir',
    'read_manifest',
    'read_trace_csv',
    'trace_rows',
    'write_manifest',
    'write_trace_csv',
]
