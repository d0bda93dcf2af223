"""
Record mappers for experiment artifacts.

This package provides mapper classes that transform in-memory results
into the flat CSV rows and manifest documents written by the runner.
"""
from .base import BaseMapper
from .manifest import ManifestMapper
from .trace import TRACE_COLUMNS, TraceRowMapper

__all__ = [
    'BaseMapper',
    'ManifestMapper',
    'TRACE_COLUMNS',
    'TraceRowMapper',
]
