"""
CSV trace files and JSON run manifests.
"""
import csv
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Mapping, Sequence, Union

from ..exceptions import ArtifactWriteError, ChartDataError
from ..mappers import TRACE_COLUMNS, TraceRowMapper
from ..qce.trace import TraceRecord
from ..telemetry import log_event, json_default

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def ensure_output_dir(path: PathLike) -> Path:
    """Create the output directory (and parents) or raise ArtifactWriteError."""
    directory = Path(path)
    try:
        directory.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise ArtifactWriteError(f"Cannot create output directory {directory}: {e}", path=str(directory)) from e
    if not directory.is_dir():
        raise ArtifactWriteError(f"Output path {directory} is not a directory", path=str(directory))
    return directory


def trace_rows(
    traces: Mapping[str, Sequence[TraceRecord]],
    include_loglog: bool = False,
) -> List[Dict[str, str]]:
    """One row per record, ordered by n and then by direction order."""
    rows = [
        (record.n, position, TraceRowMapper.map(record, include_loglog))
        for position, records in enumerate(traces.values())
        for record in records
    ]
    rows.sort(key=lambda item: (item[0], item[1]))
    return [row for _, _, row in rows]


def write_trace_csv(
    path: PathLike,
    traces: Mapping[str, Sequence[TraceRecord]],
    include_loglog: bool = False,
) -> Path:
    """
    Write a long-format trace CSV.

    Values are written with 17 significant digits so identical runs give
    identical bytes.

    Raises:
        ArtifactWriteError: if the file cannot be written
    """
    target = Path(path)
    rows = trace_rows(traces, include_loglog)
    try:
        with target.open("w", newline="", encoding="utf-8") as handle:
            writer = csv.DictWriter(handle, fieldnames=TRACE_COLUMNS, lineterminator="\n")
            writer.writeheader()
            writer.writerows(rows)
    except OSError as e:
        raise ArtifactWriteError(f"Cannot write trace CSV {target}: {e}", path=str(target)) from e
    log_event("artifact_written", kind="trace_csv", path=str(target), rows=len(rows))
    return target


def read_trace_csv(path: PathLike) -> Dict[str, List[TraceRecord]]:
    """
    Read a trace CSV back into direction tag -> records.

    Raises:
        ChartDataError: unreadable file, wrong header, malformed row or no
            data rows (line numbers are 1-based, header is line 1)
    """
    source = Path(path)
    try:
        with source.open("r", newline="", encoding="utf-8") as handle:
            reader = csv.DictReader(handle)
            header = reader.fieldnames
            if header is None:
                raise ChartDataError(f"{source} is empty", line_number=1)
            missing = [c for c in TRACE_COLUMNS if c not in header]
            if missing:
                raise ChartDataError(
                    f"Line 1: header lacks columns {', '.join(missing)}", line_number=1
                )
            traces: Dict[str, List[TraceRecord]] = {}
            for row in reader:
                if None in row:
                    raise ChartDataError(
                        f"Line {reader.line_num}: more fields than header columns",
                        line_number=reader.line_num,
                    )
                record = TraceRowMapper.parse(row, reader.line_num)
                traces.setdefault(record.direction, []).append(record)
    except OSError as e:
        raise ChartDataError(f"Cannot read trace CSV {source}: {e}") from e
    if not traces:
        raise ChartDataError(f"{source} has a header but no data rows", line_number=2)
    return traces


def write_manifest(path: PathLike, manifest: Dict[str, Any]) -> Path:
    """
    Write the run manifest as indented JSON.

    Raises:
        ArtifactWriteError: if the file cannot be written
    """
    target = Path(path)
    try:
        target.write_text(json.dumps(manifest, indent=2, default=json_default) + "\n", encoding="utf-8")
    except OSError as e:
        raise ArtifactWriteError(f"Cannot write manifest {target}: {e}", path=str(target)) from e
    log_event("artifact_written", kind="manifest", path=str(target))
    return target


def read_manifest(path: PathLike) -> Dict[str, Any]:
    return json.loads(Path(path).read_text(encoding="utf-8"))
