"""
Trace record mappers.
Transform TraceRecord objects to and from long-format CSV rows.
"""
from typing import Dict, Optional

from ..exceptions import ChartDataError
from ..qce.scaling import loglog_factor
from ..qce.trace import TraceRecord
from ..utils import format_float, parse_float
from .base import BaseMapper

TRACE_COLUMNS = (
    "n",
    "direction",
    "mean_Dn",
    "mean_growth",
    "loglog_scaled",
    "excluded",
    "saturation_fraction",
    "max_difference_ratio",
    "roundtrip_error",
    "status",
)


class TraceRowMapper(BaseMapper):
    """Map one TraceRecord to one CSV row."""

    @staticmethod
    def map(record: TraceRecord, include_loglog: bool = False) -> Dict[str, str]:
        """
        Map a trace record to a CSV row.

        Args:
            record: One step of one direction
            include_loglog: Fill loglog_scaled (<D_n> / log(log(n+1)), n >= 2)

        Returns:
            Row keyed by TRACE_COLUMNS with every value already formatted
        """
        scaled: Optional[float] = None
        if include_loglog and record.n >= 2 and record.mean_Dn is not None:
            scaled = record.mean_Dn / loglog_factor(record.n)
        return {
            "n": str(record.n),
            "direction": record.direction,
            "mean_Dn": format_float(record.mean_Dn),
            "mean_growth": format_float(record.mean_growth),
            "loglog_scaled": format_float(scaled),
            "excluded": str(record.excluded),
            "saturation_fraction": format_float(record.saturation_fraction),
            "max_difference_ratio": format_float(record.max_difference_ratio),
            "roundtrip_error": format_float(record.roundtrip_error),
            "status": record.status,
        }

    @staticmethod
    def parse(row: Dict[str, str], line_number: int) -> TraceRecord:
        """
        Rebuild a TraceRecord from a CSV row.

        Raises:
            ChartDataError: on missing columns or unparsable values
        """
        missing = [c for c in TRACE_COLUMNS if row.get(c) is None]
        if missing:
            raise ChartDataError(
                f"Line {line_number}: missing columns {', '.join(missing)}",
                line_number=line_number,
            )
        try:
            status = row["status"].strip()
            return TraceRecord(
                direction=row["direction"].strip(),
                n=int(row["n"]),
                mean_Dn=parse_float(row["mean_Dn"]),
                mean_growth=parse_float(row["mean_growth"]),
                excluded=int(row["excluded"]),
                saturation_fraction=float(row["saturation_fraction"]),
                max_difference_ratio=float(row["max_difference_ratio"]),
                roundtrip_error=float(row["roundtrip_error"]),
                halted=status != "ok",
                status=status,
            )
        except (TypeError, ValueError) as e:
            raise ChartDataError(f"Line {line_number}: {e}", line_number=line_number) from e
