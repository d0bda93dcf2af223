"""
Configuration management for quantum exponent experiments.

Presets reproduce the published parameter choices; a JSON config file or a
dict of overrides selects a preset and changes individual keys. Optional
guard defaults come from environment variables (or a .env file).
"""
import json
import math
import os
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Union

from dotenv import load_dotenv

from .exceptions import ConfigValidationError, InvalidMatrixError
from .floquet import (
    CompositionOrder,
    FloquetSpec,
    KineticSpec,
    KineticVariant,
    MultiplicativeKick,
    SubstitutionKick,
)
from .grid import DEFAULT_LOG_FLOOR, DEFAULT_SATURATION_RATIO, PeriodicGrid, WaveField, flat_state, plane_wave
from .heisenberg import ObservableSpec
from .qce import TraceGuards

DEFAULT_UNITARITY_EPS = 1e-8
DEFAULT_OUTPUT_ROOT = "runs"
FULL_SCALE_CAT_GRID_SIZE = 541

CONFIG_KEYS = (
    "preset",
    "grid_size",
    "n_max",
    "kick_strength",
    "time_step",
    "kinetic",
    "order",
    "matrix",
    "observable",
    "directions",
    "initial_wavevector",
    "saturation_ratio",
    "unitarity_eps",
    "log_floor",
    "fit_n_min",
    "fit_n_max",
    "slope_window",
    "spread_window",
    "region",
    "chart",
    "output_dir",
)

_COMMON_DEFAULTS: Dict[str, Any] = {
    "fit_n_min": 2,
    "fit_n_max": None,
    "slope_window": None,
    "spread_window": None,
    "region": None,
    "chart": True,
    "initial_wavevector": None,
}

PRESETS: Dict[str, Dict[str, Any]] = {
    "cat": {
        "grid_size": 256,
        "n_max": 20,
        "kick_strength": None,
        "time_step": 1.0 / (2.0 * math.pi),
        "kinetic": KineticVariant.CAT_QUADRATIC.value,
        "order": CompositionOrder.KICK_THEN_FREE.value,
        "matrix": [[1, 1], [1, 2]],
        "observable": [1, 1],
        "directions": [[1, 0], [0, 1]],
        "initial_wavevector": [0, 0],
    },
    "rotor_quadratic": {
        "grid_size": 4096,
        "n_max": 300,
        "kick_strength": 5.0,
        "time_step": math.sqrt(5.0) / 2.0,
        "kinetic": KineticVariant.ROTOR_QUADRATIC.value,
        "order": CompositionOrder.FREE_THEN_KICK.value,
        "matrix": None,
        "observable": [1],
        "directions": [[1]],
        "initial_wavevector": [0],
        "slope_window": [100, 300],
        "spread_window": [50, 300],
    },
    "rotor_cosine": {
        "grid_size": 16384,
        "n_max": 300,
        "kick_strength": 11.0,
        "time_step": math.sqrt(5.0) / 2.0,
        "kinetic": KineticVariant.ROTOR_COSINE.value,
        "order": CompositionOrder.FREE_THEN_KICK.value,
        "matrix": None,
        "observable": [1],
        "directions": [[1]],
        "initial_wavevector": [0],
        "slope_window": [100, 300],
        "spread_window": [50, 300],
    },
    "custom": {
        "kick_strength": None,
        "matrix": None,
        "order": CompositionOrder.FREE_THEN_KICK.value,
    },
}

CUSTOM_REQUIRED = ("grid_size", "n_max", "time_step", "kinetic", "observable", "directions")


def get_config() -> Dict[str, Optional[str]]:
    """
    Load optional defaults from environment variables.

    A .env file in the working directory is read first; variables already
    set in the environment take precedence.
    """
    load_dotenv(override=False)
    return {
        'SATURATION_RATIO': os.getenv('QCE_SATURATION_RATIO'),
        'UNITARITY_EPS': os.getenv('QCE_UNITARITY_EPS'),
        'LOG_FLOOR': os.getenv('QCE_LOG_FLOOR'),
        'LOG_LEVEL': os.getenv('QCE_LOG_LEVEL', 'WARNING'),
    }


_GUARD_ENV = (
    ('saturation_ratio', 'SATURATION_RATIO', DEFAULT_SATURATION_RATIO),
    ('unitarity_eps', 'UNITARITY_EPS', DEFAULT_UNITARITY_EPS),
    ('log_floor', 'LOG_FLOOR', DEFAULT_LOG_FLOOR),
)


def get_guard_config() -> Dict[str, float]:
    """
    Guard defaults with environment overrides applied.

    Raises:
        ConfigValidationError: a QCE_* guard variable is not a number
    """
    config = get_config()
    guards: Dict[str, float] = {}
    problems = []
    for key, env_key, default in _GUARD_ENV:
        value = config.get(env_key)
        try:
            guards[key] = float(value) if value else default
        except ValueError:
            problems.append(f'QCE_{env_key} {value!r} — expected a number')
    if problems:
        raise ConfigValidationError(f"Invalid environment: {'; '.join(problems)}", problems=problems)
    return guards


def get_log_level() -> str:
    return (get_config().get('LOG_LEVEL') or 'WARNING').upper()


@dataclass(frozen=True)
class ExperimentConfig:
    """Fully resolved experiment configuration (all defaults applied)."""

    preset: str
    grid_size: int
    n_max: int
    kinetic: str
    time_step: float
    order: str
    kick_strength: Optional[float]
    matrix: Optional[Tuple[Tuple[int, int], Tuple[int, int]]]
    observable: Tuple[int, ...]
    directions: Tuple[Tuple[float, ...], ...]
    initial_wavevector: Tuple[int, ...]
    saturation_ratio: float
    unitarity_eps: float
    log_floor: float
    fit_n_min: int
    fit_n_max: Optional[int]
    slope_window: Optional[Tuple[int, int]]
    spread_window: Optional[Tuple[int, int]]
    region: Optional[Tuple[Tuple[float, float], ...]]
    chart: bool
    output_dir: str

    @property
    def dimension(self) -> int:
        return len(self.observable)

    @property
    def grid(self) -> PeriodicGrid:
        return PeriodicGrid(self.dimension, self.grid_size)

    def floquet_spec(self) -> FloquetSpec:
        if self.matrix is not None:
            kick = SubstitutionKick(self.matrix)
        else:
            kick = MultiplicativeKick(self.kick_strength or 0.0)
        return FloquetSpec(
            self.grid,
            KineticSpec(KineticVariant(self.kinetic), self.time_step),
            kick,
            CompositionOrder(self.order),
        )

    def observable_spec(self) -> ObservableSpec:
        return ObservableSpec(self.observable)

    def guards(self) -> TraceGuards:
        return TraceGuards(self.saturation_ratio, self.unitarity_eps, self.log_floor)

    def initial_state(self) -> WaveField:
        if not any(self.initial_wavevector):
            return flat_state(self.grid)
        return plane_wave(self.grid, self.initial_wavevector)

    def with_overrides(self, **changes: Any) -> "ExperimentConfig":
        """Re-resolve with some keys replaced (used by sweeps)."""
        raw = self.to_dict()
        raw.update(changes)
        return resolve_config(raw)

    def to_dict(self) -> Dict[str, Any]:
        """JSON-ready dict; resolve_config(to_dict()) gives back an equal config."""
        data = asdict(self)
        for key, value in data.items():
            if isinstance(value, tuple):
                data[key] = json.loads(json.dumps(value))
        return data


def _is_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def _is_number(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool) and math.isfinite(value)


def _merge(raw: Dict[str, Any], paper_scale: bool) -> Tuple[str, Dict[str, Any]]:
    preset = raw.get("preset") or "custom"
    merged: Dict[str, Any] = dict(_COMMON_DEFAULTS)
    merged.update(get_guard_config())
    merged.update(PRESETS.get(preset, {}))
    if paper_scale and preset == "cat":
        merged["grid_size"] = FULL_SCALE_CAT_GRID_SIZE
    merged["output_dir"] = str(Path(DEFAULT_OUTPUT_ROOT) / preset)
    merged.update({k: v for k, v in raw.items() if k in CONFIG_KEYS and k != "preset"})
    observable = merged.get("observable")
    if merged.get("initial_wavevector") is None and isinstance(observable, (list, tuple)):
        merged["initial_wavevector"] = [0] * len(observable)
    merged["preset"] = preset
    return preset, merged


def _check_window(name: str, window: Any, fail) -> None:
    if window is None:
        return
    if (not isinstance(window, (list, tuple)) or len(window) != 2
            or not all(_is_int(w) for w in window) or not 0 <= window[0] < window[1]):
        fail(f'{name} {window!r} — expected [lo, hi] integers with 0 <= lo < hi')


def validate_config(raw: Dict[str, Any], paper_scale: bool = False) -> Dict[str, Any]:
    """
    Validate an experiment configuration and return a status report.

    Args:
        raw: Config dict (file contents or overrides); 'preset' selects defaults
        paper_scale: Use the full published grid size for the cat preset

    Returns:
        Dict with keys: valid (bool), missing_required (list),
        format_errors (list), preset (str)
    """
    result: Dict[str, Any] = {
        'valid': True,
        'missing_required': [],
        'format_errors': [],
        'preset': None,
    }

    def _fail(msg: str) -> None:
        result['missing_required'].append(msg)
        result['valid'] = False

    def _fmt_fail(msg: str) -> None:
        result['format_errors'].append(msg)
        result['valid'] = False

    if not isinstance(raw, dict):
        _fmt_fail(f'config must be a JSON object, got {type(raw).__name__}')
        return result

    for key in raw:
        if key not in CONFIG_KEYS:
            _fmt_fail(f'unknown key "{key}" — expected one of: {", ".join(CONFIG_KEYS)}')

    preset = raw.get("preset") or "custom"
    result['preset'] = preset
    if preset not in PRESETS:
        _fmt_fail(f'preset "{preset}" — expected one of: {", ".join(PRESETS)}')
        return result

    if preset == "custom":
        for key in CUSTOM_REQUIRED:
            if raw.get(key) is None:
                _fail(f'{key} — required for the custom preset')
        if raw.get("kick_strength") is None and raw.get("matrix") is None:
            _fail('kick_strength (1D) or matrix (2D) — required for the custom preset')
        if not result['valid']:
            return result

    try:
        _, cfg = _merge(raw, paper_scale)
    except ConfigValidationError as e:
        for problem in e.problems:
            _fmt_fail(problem)
        return result

    if not _is_int(cfg["grid_size"]) or cfg["grid_size"] < 4:
        _fmt_fail(f'grid_size {cfg["grid_size"]!r} — expected an integer >= 4')
    if not _is_int(cfg["n_max"]) or cfg["n_max"] < 1:
        _fmt_fail(f'n_max {cfg["n_max"]!r} — expected an integer >= 1')
    if not _is_number(cfg["time_step"]) or cfg["time_step"] <= 0:
        _fmt_fail(f'time_step {cfg["time_step"]!r} — expected a positive number')

    kinetic = None
    try:
        kinetic = KineticVariant(cfg["kinetic"])
    except ValueError:
        _fmt_fail(f'kinetic "{cfg["kinetic"]}" — expected one of: '
                  f'{", ".join(v.value for v in KineticVariant)}')
    try:
        CompositionOrder(cfg["order"])
    except ValueError:
        _fmt_fail(f'order "{cfg["order"]}" — expected one of: '
                  f'{", ".join(o.value for o in CompositionOrder)}')

    observable = cfg["observable"]
    dim = None
    if (not isinstance(observable, (list, tuple)) or len(observable) not in (1, 2)
            or not all(_is_int(c) for c in observable) or not any(observable)):
        _fmt_fail(f'observable {observable!r} — expected a nonzero integer list of length 1 or 2')
    else:
        dim = len(observable)

    if kinetic is not None and dim is not None and kinetic.dimension not in (None, dim):
        _fmt_fail(f'kinetic "{kinetic.value}" needs a {kinetic.dimension}D observable, got {dim}D')

    if dim == 1:
        if cfg["matrix"] is not None:
            _fmt_fail('matrix — substitution kicks need a 2D observable')
        if not _is_number(cfg["kick_strength"]) or cfg["kick_strength"] < 0:
            _fmt_fail(f'kick_strength {cfg["kick_strength"]!r} — expected a number >= 0')
    elif dim == 2:
        if cfg["kick_strength"] not in (None, 0, 0.0):
            _fmt_fail('kick_strength — multiplicative kicks need a 1D observable')
        try:
            SubstitutionKick(cfg["matrix"])
        except (InvalidMatrixError, TypeError, ValueError) as e:
            _fmt_fail(f'matrix {cfg["matrix"]!r} — {getattr(e, "message", e)}')

    directions = cfg["directions"]
    if not isinstance(directions, (list, tuple)) or not directions:
        _fmt_fail(f'directions {directions!r} — expected a non-empty list of vectors')
    elif dim is not None:
        for v in directions:
            if (not isinstance(v, (list, tuple)) or len(v) != dim
                    or not all(_is_number(c) for c in v) or not any(v)):
                _fmt_fail(f'direction {v!r} — expected a nonzero vector of length {dim}')
            elif dim == 1 and v[0] not in (1, -1):
                _fmt_fail(f'direction {v!r} — 1D directions must be [1] or [-1]')

    wavevector = cfg["initial_wavevector"]
    if dim is not None:
        if (not isinstance(wavevector, (list, tuple)) or len(wavevector) != dim
                or not all(_is_int(c) for c in wavevector)):
            _fmt_fail(f'initial_wavevector {wavevector!r} — expected {dim} integers')
        elif _is_int(cfg["grid_size"]) and cfg["grid_size"] >= 4:
            low, high = -(cfg["grid_size"] // 2), (cfg["grid_size"] + 1) // 2 - 1
            if any(c < low or c > high for c in wavevector):
                _fmt_fail(f'initial_wavevector {wavevector!r} — outside band [{low}, {high}]')

    if not _is_number(cfg["saturation_ratio"]) or not 0 <= cfg["saturation_ratio"] <= 1:
        _fmt_fail(f'saturation_ratio {cfg["saturation_ratio"]!r} — expected: 0–1')
    if not _is_number(cfg["unitarity_eps"]) or cfg["unitarity_eps"] <= 0:
        _fmt_fail(f'unitarity_eps {cfg["unitarity_eps"]!r} — expected a positive number')
    if not _is_number(cfg["log_floor"]) or not 0 <= cfg["log_floor"] < 1:
        _fmt_fail(f'log_floor {cfg["log_floor"]!r} — expected: 0 <= floor < 1')

    if not _is_int(cfg["fit_n_min"]) or cfg["fit_n_min"] < 1:
        _fmt_fail(f'fit_n_min {cfg["fit_n_min"]!r} — expected an integer >= 1')
    elif cfg["fit_n_max"] is not None and (not _is_int(cfg["fit_n_max"])
                                           or cfg["fit_n_max"] < cfg["fit_n_min"]):
        _fmt_fail(f'fit_n_max {cfg["fit_n_max"]!r} — expected null or an integer >= fit_n_min')

    _check_window("slope_window", cfg["slope_window"], _fmt_fail)
    _check_window("spread_window", cfg["spread_window"], _fmt_fail)

    region = cfg["region"]
    if region is not None and dim is not None:
        if not isinstance(region, (list, tuple)) or len(region) != dim:
            _fmt_fail(f'region {region!r} — expected {dim} [lo, hi] pairs')
        else:
            for bounds in region:
                if (not isinstance(bounds, (list, tuple)) or len(bounds) != 2
                        or not all(_is_number(b) for b in bounds)
                        or not 0 <= bounds[0] < bounds[1] <= 1):
                    _fmt_fail(f'region bounds {bounds!r} — expected 0 <= lo < hi <= 1')

    if not isinstance(cfg["chart"], bool):
        _fmt_fail(f'chart {cfg["chart"]!r} — expected true or false')
    if not isinstance(cfg["output_dir"], str) or not cfg["output_dir"].strip():
        _fmt_fail(f'output_dir {cfg["output_dir"]!r} — expected a non-empty path')

    return result


def _tuple(value: Any) -> Any:
    if isinstance(value, (list, tuple)):
        return tuple(_tuple(v) for v in value)
    return value


def resolve_config(raw: Dict[str, Any], paper_scale: bool = False) -> ExperimentConfig:
    """
    Apply preset and environment defaults, validate, and freeze.

    Raises:
        ConfigValidationError: with every problem found
    """
    report = validate_config(raw, paper_scale)
    if not report['valid']:
        problems = report['missing_required'] + report['format_errors']
        raise ConfigValidationError(
            f"Invalid configuration: {'; '.join(problems)}", problems=problems
        )
    preset, cfg = _merge(raw, paper_scale)
    dim = len(cfg["observable"])
    return ExperimentConfig(
        preset=preset,
        grid_size=int(cfg["grid_size"]),
        n_max=int(cfg["n_max"]),
        kinetic=KineticVariant(cfg["kinetic"]).value,
        time_step=float(cfg["time_step"]),
        order=CompositionOrder(cfg["order"]).value,
        kick_strength=float(cfg["kick_strength"]) if dim == 1 else None,
        matrix=_tuple(cfg["matrix"]) if dim == 2 else None,
        observable=_tuple(cfg["observable"]),
        directions=tuple(tuple(float(c) for c in v) for v in cfg["directions"]),
        initial_wavevector=_tuple(cfg["initial_wavevector"]),
        saturation_ratio=float(cfg["saturation_ratio"]),
        unitarity_eps=float(cfg["unitarity_eps"]),
        log_floor=float(cfg["log_floor"]),
        fit_n_min=int(cfg["fit_n_min"]),
        fit_n_max=cfg["fit_n_max"],
        slope_window=_tuple(cfg["slope_window"]),
        spread_window=_tuple(cfg["spread_window"]),
        region=None if cfg["region"] is None else tuple(
            (float(lo), float(hi)) for lo, hi in cfg["region"]
        ),
        chart=cfg["chart"],
        output_dir=cfg["output_dir"],
    )


def load_config_file(path: Union[str, Path]) -> Dict[str, Any]:
    """
    Read a JSON config file.

    A run manifest is accepted too; its resolved "config" block is returned.

    Raises:
        ConfigValidationError: missing file or invalid JSON
    """
    source = Path(path)
    try:
        data = json.loads(source.read_text(encoding="utf-8"))
    except OSError as e:
        raise ConfigValidationError(f"Cannot read config {source}: {e}", problems=[str(e)]) from e
    except json.JSONDecodeError as e:
        problem = f"line {e.lineno}: {e.msg}"
        raise ConfigValidationError(f"Invalid JSON in {source}: {problem}", problems=[problem]) from e
    if not isinstance(data, dict):
        raise ConfigValidationError(f"{source} must contain a JSON object",
                                    problems=["top level is not an object"])
    if "exit_status" in data and isinstance(data.get("config"), dict):
        return dict(data["config"])
    return data


def print_config_status(raw: Dict[str, Any], paper_scale: bool = False) -> Dict[str, Any]:
    """Print the validation report and the resolved values."""
    validation = validate_config(raw, paper_scale)

    print("Configuration Status")
    print("=" * 50)
    print(f"Preset: {validation['preset']}")
    print(f"Valid: {'SUCCESS' if validation['valid'] else 'ERROR'}")

    if validation['missing_required']:
        print("\nERROR: Missing Required:")
        for item in validation['missing_required']:
            print(f"   - {item}")

    if validation['format_errors']:
        print("\nERROR: Format Issues:")
        for item in validation['format_errors']:
            print(f"   - {item}")

    if validation['valid']:
        print("\nResolved Configuration:")
        for key, value in resolve_config(raw, paper_scale).to_dict().items():
            print(f"   {key}: {value}")
    return validation
