"""
Utility functions shared by the trace, artifact and workflow layers.
"""
import math
import re
from datetime import datetime, timezone
from typing import Optional, Sequence, Tuple


def iso_now() -> str:
    """Get current timestamp in ISO format with 'Z' suffix"""
    return to_iso(datetime.now(timezone.utc))


def to_iso(dt: datetime) -> str:
    """Convert datetime to ISO string, assuming UTC for naive values."""
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    return dt.isoformat().replace("+00:00", "Z")


def normalize_direction(v: Sequence[float]) -> Tuple[float, ...]:
    """Return v scaled to unit Euclidean length."""
    components = tuple(float(c) for c in v)
    length = math.sqrt(sum(c * c for c in components))
    if length == 0.0:
        raise ValueError(f"Direction vector {tuple(v)} has zero length")
    return tuple(c / length for c in components)


def direction_tag(v: Sequence[float]) -> str:
    """
    Stable column-safe tag for a direction vector.

    Integer-valued components are written without decimals, so (1, 0)
    becomes ``v1_0`` and (0.5, -1) becomes ``v0p5_m1``.
    """
    parts = []
    for c in v:
        c = float(c)
        text = str(int(c)) if c.is_integer() else f"{c:.6g}"
        parts.append(clean_tag(text))
    return "v" + "_".join(parts)


def clean_tag(text: str) -> str:
    """Replace characters that are awkward in CSV headers and file names."""
    if not text:
        return "unknown"
    text = text.replace("-", "m").replace(".", "p")
    return re.sub(r"[^a-zA-Z0-9_]", "_", text)


def format_float(value: Optional[float]) -> str:
    """Render a float with 17 significant digits; None becomes an empty field."""
    if value is None:
        return ""
    return f"{value:.17g}"


def parse_float(text: str) -> Optional[float]:
    """Inverse of format_float."""
    text = text.strip()
    if not text:
        return None
    return float(text)
