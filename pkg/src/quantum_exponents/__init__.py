"""
Quantum Exponents: a numerical laboratory for quantum characteristic exponents.

This package computes the growth rate of derivatives of Heisenberg-evolved
matrix elements for kicked quantum systems (quantum kicked rotators on the
circle and the configurational quantum cat on the torus), and validates the
pipeline against the exactly solvable cat map.

Main Features:
- Split-step Floquet operators with a unitary FFT pair
- Heisenberg fields gamma_n with cached forward states and roundtrip checks
- Saturation- and unitarity-guarded growth-index traces
- Constrained shared-asymptote exponent fit (lambda + c/n)
- Exact cat oracle in big-integer and quadratic-field arithmetic
- Reproducible experiments: CSV traces, JSON manifests and SVG charts

Quick Start:
```python
from quantum_exponents import workflows
from quantum_exponents.config import resolve_config

config = resolve_config({"preset": "cat"})
result = workflows.run_experiment(config)
print(result.estimate.lambda_)
```

For advanced usage:
```python
from quantum_exponents.floquet import FloquetSpec, KineticSpec, MultiplicativeKick
from quantum_exponents.grid import PeriodicGrid
from quantum_exponents.heisenberg import HeisenbergRun, ObservableSpec
from quantum_exponents.qce import run_trace

grid = PeriodicGrid(1, 4096)
spec = FloquetSpec(grid, KineticSpec("rotor_quadratic", 5 ** 0.5 / 2), MultiplicativeKick(5.0))
run = HeisenbergRun(spec, ObservableSpec((1,)), n_max=300)
records = run_trace(run, 1)
```
"""

__version__ = "0.3.0"

from . import config
from . import utils
from . import workflows

from .exceptions import (
    QCEException,
    BandLimitError,
    DegenerateAverageError,
    UnderdeterminedFitError,
    UnitarityGuardError,
    InvalidMatrixError,
    ConfigValidationError,
    ChartDataError,
    ArtifactWriteError,
)
from .grid import PeriodicGrid, WaveField, RealField, flat_state, plane_wave
from .floquet import (
    CompositionOrder,
    FloquetSpec,
    KineticSpec,
    KineticVariant,
    MultiplicativeKick,
    SubstitutionKick,
)
from .heisenberg import HeisenbergRun, ObservableSpec
from .qce import ExponentEstimate, TraceGuards, TraceRecord, fit_exponent, run_trace, run_traces
from .oracle import CatMatrix, analytic_derivative_field, exact_exponent
from .config import ExperimentConfig, get_config, resolve_config, validate_config
from .workflows import ExitStatus, run_experiment, run_sweep

__all__ = [
    '__version__',
    'config',
    'utils',
    'workflows',
    'QCEException',
    'BandLimitError',
    'DegenerateAverageError',
    'UnderdeterminedFitError',
    'UnitarityGuardError',
    'InvalidMatrixError',
    'ConfigValidationError',
    'ChartDataError',
    'ArtifactWriteError',
    'PeriodicGrid',
    'WaveField',
    'RealField',
    'flat_state',
    'plane_wave',
    'CompositionOrder',
    'FloquetSpec',
    'KineticSpec',
    'KineticVariant',
    'MultiplicativeKick',
    'SubstitutionKick',
    'HeisenbergRun',
    'ObservableSpec',
    'ExponentEstimate',
    'TraceGuards',
    'TraceRecord',
    'fit_exponent',
    'run_trace',
    'run_traces',
    'CatMatrix',
    'analytic_derivative_field',
    'exact_exponent',
    'ExperimentConfig',
    'get_config',
    'resolve_config',
    'validate_config',
    'ExitStatus',
    'run_experiment',
    'run_sweep',
]
