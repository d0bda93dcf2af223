"""
End-to-end acceptance checks against known exponents: the exact cat value,
the numerically fitted cat exponent at desk and published scale, and the
vanishing or slowly growing rotor traces.
"""
import math

import numpy as np
import pytest

CAT = ((1, 1), (1, 2))


@pytest.fixture(autouse=True)
def _import_guard():
    try:
        import quantum_exponents.workflows  # noqa: F401
    except ImportError as exc:
        pytest.skip(f"quantum_exponents not installed: {exc}")


def _run_preset(preset, **overrides):
    from quantum_exponents.config import resolve_config
    from quantum_exponents.workflows import run_experiment
    paper_scale = overrides.pop("paper_scale", False)
    config = resolve_config(dict({"preset": preset}, **overrides), paper_scale=paper_scale)
    return run_experiment(config, write=False)


# ── cat exponent ──────────────────────────────────────────────────────────────

def test_exact_cat_exponent():
    from quantum_exponents.oracle import CatMatrix
    log_mu1 = CatMatrix(CAT).log_mu1
    assert f"{log_mu1:.6f}" == "0.962424"
    assert log_mu1 == pytest.approx(math.log((3 + math.sqrt(5)) / 2), abs=1e-15)


@pytest.mark.slow
def test_cat_desk_scale():
    from quantum_exponents.workflows import ExitStatus
    result = _run_preset("cat")
    assert result.exit_status is ExitStatus.HALTED
    assert result.estimate is not None
    assert 0.85 <= result.estimate.lambda_ <= 1.05
    assert abs(result.oracle["difference"]) < 0.12


@pytest.mark.slow
def test_cat_paper_scale():
    result = _run_preset("cat", paper_scale=True)
    assert result.config.grid_size == 541
    assert result.estimate is not None
    assert 0.90 <= result.estimate.lambda_ <= 1.00


@pytest.mark.slow
def test_cat_roundtrip_stays_below_epsilon():
    result = _run_preset("cat")
    errors = [r.roundtrip_error for records in result.traces.values() for r in records]
    assert max(errors) < 1e-8


# ── numerical versus analytic cat fields ──────────────────────────────────────

@pytest.mark.parametrize("v", [(1, 0), (0, 1), (1, 1)])
def test_numeric_derivative_matches_analytic_field(v):
    from quantum_exponents.floquet import FloquetSpec, KineticSpec, SubstitutionKick
    from quantum_exponents.grid import PeriodicGrid, directional_derivative
    from quantum_exponents.heisenberg import HeisenbergRun, ObservableSpec
    from quantum_exponents.oracle import CatMatrix, analytic_derivative_field
    grid = PeriodicGrid(2, 128)
    spec = FloquetSpec(grid, KineticSpec("cat_quadratic", 1.0), SubstitutionKick(CAT), "kick_then_free")
    run = HeisenbergRun(spec, ObservableSpec((1, 0)), n_max=4)
    matrix = CatMatrix(CAT)
    for n in range(5):
        numeric = directional_derivative(run.gamma(n), v).field.values
        if not np.any(np.abs(numeric) > 1e-12):
            continue
        analytic = analytic_derivative_field(matrix, (1, 0), v, 1.0, n, grid, stencil="central").values
        scale = np.vdot(analytic, numeric) / np.vdot(analytic, analytic)
        error = np.max(np.abs(numeric - scale * analytic)) / np.max(np.abs(numeric))
        assert error < 1e-4


# ── rotor traces ──────────────────────────────────────────────────────────────

@pytest.mark.slow
def test_quadratic_rotor_exponent_vanishes():
    result = _run_preset("rotor_quadratic")
    assert result.config.grid_size == 4096
    assert "slope" in result.slope, result.slope
    assert abs(result.slope["slope"]) < 0.02
    errors = [r.roundtrip_error for r in next(iter(result.traces.values()))]
    assert max(errors) < 1e-8


@pytest.mark.slow
def test_cosine_rotor_grows_like_loglog():
    result = _run_preset("rotor_cosine")
    assert result.config.grid_size == 16384
    assert result.exit_status.label == "completed"
    assert next(iter(result.traces.values()))[-1].n == 300
    assert result.slope["spread_covered"] == [50, 300]
    assert result.slope["spread_truncated"] is False
    assert "scaled_spread" in result.slope, result.slope
    assert result.slope["scaled_spread"] < result.slope["raw_spread"]
    assert result.estimate is not None
    assert abs(result.estimate.lambda_) < 0.05


def test_rotor_baseline_level():
    result = _run_preset("rotor_quadratic", n_max=1, slope_window=None, spread_window=None)
    first = next(iter(result.traces.values()))[0]
    assert first.n == 0
    assert first.mean_Dn == pytest.approx(math.log(math.pi), abs=0.05)


# ── telescoping over presets ──────────────────────────────────────────────────

@pytest.mark.parametrize("preset,grid_size,n_max", [
    ("rotor_quadratic", 256, 20),
    ("rotor_cosine", 256, 20),
    ("cat", 64, 4),
])
def test_telescoping_for_presets(preset, grid_size, n_max):
    from quantum_exponents.config import resolve_config
    from quantum_exponents.heisenberg import HeisenbergRun
    from quantum_exponents.qce import growth_index_field, telescoping_terms
    config = resolve_config({"preset": preset, "grid_size": grid_size, "n_max": n_max,
                             "slope_window": None, "spread_window": None})
    run = HeisenbergRun(config.floquet_spec(), config.observable_spec(),
                        psi0=config.initial_state(), n_max=n_max)
    for v in config.directions:
        terms = telescoping_terms(run, v, n_max)
        first = growth_index_field(run, v, 0)
        last = growth_index_field(run, v, n_max)
        mask = np.logical_and.reduce([t.valid_mask for t in terms])
        assert mask.any()
        total = np.sum([t.values for t in terms], axis=0)
        assert np.allclose(total[mask], (last.values - first.values)[mask], atol=1e-9)
