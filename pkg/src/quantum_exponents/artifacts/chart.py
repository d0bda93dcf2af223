"""
SVG charts of trace CSVs with the shared-asymptote fit.
"""
import logging
import threading
from pathlib import Path
from typing import Optional, Union

import matplotlib

matplotlib.use("Agg")
import numpy as np
from matplotlib.figure import Figure

from ..exceptions import ChartDataError, UnderdeterminedFitError
from ..qce.fit import fit_records
from ..qce.scaling import loglog_scaled
from ..telemetry import log_event
from .writer import read_trace_csv

logger = logging.getLogger(__name__)

QUANTITY_LABELS = {
    "mean_growth": "(1/n) <D_n - D_0>",
    "mean_Dn": "<D_n>",
    "loglog_scaled": "<D_n> / log(log(n+1))",
}

# stable SVG element ids
SVG_RC = {"svg.hashsalt": "quantum-exponents", "svg.fonttype": "none"}

# rc_context edits the process-wide rcParams
_SAVE_LOCK = threading.Lock()


def _series(records, quantity: str):
    if quantity == "loglog_scaled":
        return loglog_scaled(records)
    return [(r.n, getattr(r, quantity)) for r in records if getattr(r, quantity) is not None]


def emit_chart(
    csv_path: Union[str, Path],
    output_path: Optional[Union[str, Path]] = None,
    quantity: str = "mean_growth",
    fit: bool = True,
    fit_n_min: int = 2,
    fit_n_max: Optional[int] = None,
    title: Optional[str] = None,
) -> Path:
    """
    Plot one point series per direction, plus lambda + c/n curves.

    The fit curves are drawn only for quantity "mean_growth" when fit is
    enabled and the shared-asymptote fit is determined; a dashed line marks
    the asymptote lambda.

    Args:
        csv_path: Trace CSV written by write_trace_csv
        output_path: SVG path (defaults to the CSV path with .svg)
        quantity: mean_growth, mean_Dn or loglog_scaled
        fit: Draw fit curves
        fit_n_min: Smallest n entering the fit
        fit_n_max: Largest n entering the fit (None: no upper bound)

    Raises:
        ChartDataError: malformed CSV or fewer than two rows
    """
    if quantity not in QUANTITY_LABELS:
        raise ValueError(f"Unknown quantity {quantity!r}; use one of {', '.join(QUANTITY_LABELS)}")
    traces = read_trace_csv(csv_path)
    if sum(len(records) for records in traces.values()) < 2:
        raise ChartDataError(f"{csv_path} needs at least two data rows to chart", line_number=2)
    target = Path(output_path) if output_path else Path(csv_path).with_suffix(".svg")

    figure = Figure(figsize=(7.0, 4.5))
    ax = figure.add_subplot(1, 1, 1)
    colors = matplotlib.rcParams["axes.prop_cycle"].by_key()["color"]

    estimate = None
    if fit and quantity == "mean_growth":
        try:
            estimate = fit_records(traces, n_min=fit_n_min, n_max=fit_n_max)
        except UnderdeterminedFitError as e:
            logger.info("Chart without fit: %s", e.message)

    for index, (tag, records) in enumerate(traces.items()):
        color = colors[index % len(colors)]
        points = _series(records, quantity)
        if not points:
            continue
        n_values, values = zip(*points)
        ax.plot(n_values, values, "o", color=color, label=tag)
        if estimate is not None and tag in estimate.per_direction_transient:
            lo, hi = estimate.n_range_used
            dense = np.linspace(lo, max(hi, lo + 1), 200)
            ax.plot(dense, estimate.curve(tag, dense), "-", color=color,
                    label=f"{tag} fit: lambda + c/n")

    if estimate is not None:
        ax.axhline(estimate.lambda_, linestyle="--", color="0.4",
                   label=f"lambda = {estimate.lambda_:.4f}")

    ax.set_xlabel("n")
    ax.set_ylabel(QUANTITY_LABELS[quantity])
    if title:
        ax.set_title(title)
    ax.legend(loc="best", fontsize=8)
    ax.grid(True, alpha=0.3)

    with _SAVE_LOCK, matplotlib.rc_context(SVG_RC):
        figure.savefig(target, format="svg", metadata={"Date": None})
    log_event("artifact_written", kind="chart", path=str(target), quantity=quantity)
    return target
