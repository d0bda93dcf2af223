"""Log-log scaling of <D_n> for slowly growing traces."""
import math
from typing import List, Sequence, Tuple

import numpy as np

from .trace import TraceRecord


def loglog_factor(n: int) -> float:
    return math.log(math.log(n + 1))


def loglog_scaled(records: Sequence[TraceRecord]) -> List[Tuple[int, float]]:
    """(n, <D_n> / log(log(n+1))) for n >= 2; n = 0, 1 are omitted."""
    return [
        (r.n, r.mean_Dn / loglog_factor(r.n))
        for r in records
        if r.n >= 2 and r.mean_Dn is not None
    ]


def relative_spread(values: Sequence[float]) -> float:
    """(max - min) / |mean|."""
    data = np.asarray(values, dtype=float)
    if data.size == 0:
        raise ValueError("relative_spread needs at least one value")
    mean = float(np.mean(data))
    if mean == 0.0:
        raise ValueError("relative_spread is undefined for zero mean")
    return float((data.max() - data.min()) / abs(mean))
