"""
Run manifest mappers.
"""
from typing import Any, Dict, Mapping, Optional, Sequence

from .. import __version__
from ..qce.fit import ExponentEstimate
from ..qce.trace import TraceRecord, halt_reason
from .base import BaseMapper


class ManifestMapper(BaseMapper):
    """Map one experiment's results to the manifest schema."""

    @staticmethod
    def map(
        config: Dict[str, Any],
        traces: Mapping[str, Sequence[TraceRecord]],
        started: str,
        finished: str,
        exit_status: str,
        estimate: Optional[ExponentEstimate] = None,
        fit_error: Optional[str] = None,
        slope: Optional[Dict[str, Any]] = None,
        oracle: Optional[Dict[str, Any]] = None,
        artifacts: Optional[Dict[str, str]] = None,
    ) -> Dict[str, Any]:
        """
        Build the run manifest.

        Args:
            config: Fully resolved configuration (defaults applied)
            traces: Direction tag -> records
            started: ISO start timestamp
            finished: ISO end timestamp
            exit_status: completed, halted or degenerate
            estimate: Shared-asymptote fit, when one could be made
            fit_error: Why the fit was skipped
            slope: Slope and log-log spread diagnostics (rotators)
            oracle: Exact-vs-fit comparison (cat)
            artifacts: Names of files written next to the manifest

        Returns:
            Manifest dictionary, JSON-serializable
        """
        return {
            "version": __version__,
            "started": started,
            "finished": finished,
            "exit_status": exit_status,
            "config": config,
            "directions": {
                tag: {
                    "halt_reason": halt_reason(records),
                    "steps": len(records),
                    "last_n": records[-1].n if records else None,
                }
                for tag, records in traces.items()
            },
            "estimate": estimate.to_dict() if estimate is not None else None,
            "fit_error": fit_error,
            "slope": slope,
            "oracle": oracle,
            "artifacts": artifacts or {},
        }
