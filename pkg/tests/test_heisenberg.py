"""
Unit tests for heisenberg.py: observable fields, forward-state caching and
the unitarity guard.
"""
import numpy as np
import pytest


@pytest.fixture(autouse=True)
def _import_guard():
    try:
        import quantum_exponents.heisenberg  # noqa: F401
    except ImportError as exc:
        pytest.skip(f"quantum_exponents not installed: {exc}")


# ── ObservableSpec ────────────────────────────────────────────────────────────

class TestObservableSpec:
    def test_scalar_wavevector_becomes_tuple(self):
        from quantum_exponents.heisenberg import ObservableSpec
        assert ObservableSpec(2).l == (2,)

    @pytest.mark.parametrize("l", [(0,), (0, 0), (1.5,)])
    def test_rejects_bad_wavevector(self, l):
        from quantum_exponents.heisenberg import ObservableSpec
        with pytest.raises(ValueError):
            ObservableSpec(l)

    def test_rejects_nonpositive_amplitude(self):
        from quantum_exponents.heisenberg import ObservableSpec
        with pytest.raises(ValueError):
            ObservableSpec((1,), amplitude=0.0)

    def test_dimension_must_match_grid(self, rotor_spec):
        from quantum_exponents.heisenberg import ObservableSpec, observable_profile
        with pytest.raises(ValueError):
            observable_profile(ObservableSpec((1, 1)), rotor_spec.grid)


# ── HeisenbergRun ─────────────────────────────────────────────────────────────

class TestHeisenbergRun:
    def test_gamma_zero_is_observable_times_state(self, rotor_spec):
        from quantum_exponents.heisenberg import HeisenbergRun, ObservableSpec
        run = HeisenbergRun(rotor_spec, ObservableSpec((1,)), n_max=3)
        (x,) = rotor_spec.grid.coordinates()
        assert np.allclose(run.gamma(0).values, np.sin(2 * np.pi * x), atol=1e-15)

    def test_apply_observable_matches_gamma_zero(self, cat_spec):
        from quantum_exponents.grid import flat_state
        from quantum_exponents.heisenberg import HeisenbergRun, ObservableSpec, apply_observable
        obs = ObservableSpec((1, 1), amplitude=2.0)
        run = HeisenbergRun(cat_spec, obs, n_max=1)
        product = apply_observable(obs, flat_state(cat_spec.grid))
        assert np.array_equal(product.values, run.gamma(0).values)

    def test_identity_dynamics_keeps_gamma(self, identity_spec):
        from quantum_exponents.heisenberg import HeisenbergRun, ObservableSpec
        run = HeisenbergRun(identity_spec, ObservableSpec((3,)), n_max=5)
        gamma0 = run.gamma(0).values
        for n in range(1, 6):
            assert np.array_equal(run.gamma(n).values, gamma0)

    def test_plane_wave_initial_state(self, identity_spec):
        from quantum_exponents.grid import plane_wave
        from quantum_exponents.heisenberg import HeisenbergRun, ObservableSpec, observable_profile
        obs = ObservableSpec((1,))
        psi0 = plane_wave(identity_spec.grid, 2)
        run = HeisenbergRun(identity_spec, obs, psi0=psi0, n_max=2)
        expected = observable_profile(obs, identity_spec.grid) * psi0.values
        assert np.array_equal(run.gamma(2).values, expected)

    def test_forward_states_are_cached(self, rotor_spec, mocker):
        from quantum_exponents.heisenberg import HeisenbergRun, ObservableSpec
        run = HeisenbergRun(rotor_spec, ObservableSpec((1,)), n_max=10)
        forward = mocker.spy(run.operator, "step_values")
        backward = mocker.spy(run.operator, "step_inverse_values")
        run.evolve(5)
        run.evolve(3)
        run.evolve(5)
        assert forward.call_count == 5
        assert backward.call_count == 5 + 3 + 5
        assert run.cached_steps == 5

    def test_norm_is_conserved_over_long_trajectory(self, rotor_spec):
        from quantum_exponents.grid import l2_norm
        from quantum_exponents.heisenberg import HeisenbergRun, ObservableSpec
        run = HeisenbergRun(rotor_spec, ObservableSpec((1,)), n_max=300)
        norm0 = l2_norm(run.state(0))
        drift = max(abs(l2_norm(run.state(n)) - norm0) for n in range(0, 301, 25))
        assert drift <= 1e-9

    @pytest.mark.parametrize("amplitude", [1.0, 0.5])
    def test_gamma_norm_bounded_by_observable(self, rotor_spec, amplitude):
        from quantum_exponents.grid import l2_norm
        from quantum_exponents.heisenberg import HeisenbergRun, ObservableSpec, apply_observable
        obs = ObservableSpec((2,), amplitude=amplitude)
        run = HeisenbergRun(rotor_spec, obs, n_max=40)
        norm0 = l2_norm(run.state(0))
        for n in (0, 1, 10, 40):
            gamma_norm = l2_norm(run.gamma(n))
            assert gamma_norm == pytest.approx(l2_norm(apply_observable(obs, run.state(n))), abs=1e-10)
            assert gamma_norm <= amplitude * norm0 + 1e-10

    def test_roundtrip_error_is_small(self, rotor_spec):
        from quantum_exponents.heisenberg import HeisenbergRun, ObservableSpec
        run = HeisenbergRun(rotor_spec, ObservableSpec((1,)), n_max=10)
        assert run.evolve(10).roundtrip_error < 1e-12

    def test_step_outside_range(self, rotor_spec):
        from quantum_exponents.heisenberg import HeisenbergRun, ObservableSpec
        run = HeisenbergRun(rotor_spec, ObservableSpec((1,)), n_max=2)
        with pytest.raises(ValueError):
            run.gamma(3)
        with pytest.raises(ValueError):
            run.state(-1)

    def test_initial_state_grid_mismatch(self, rotor_spec):
        from quantum_exponents.grid import PeriodicGrid, flat_state
        from quantum_exponents.heisenberg import HeisenbergRun, ObservableSpec
        with pytest.raises(ValueError):
            HeisenbergRun(rotor_spec, ObservableSpec((1,)), psi0=flat_state(PeriodicGrid(1, 8)))

    def test_unitarity_guard_raises(self, rotor_spec, mocker):
        from quantum_exponents.exceptions import UnitarityGuardError
        from quantum_exponents.heisenberg import HeisenbergRun, ObservableSpec
        run = HeisenbergRun(rotor_spec, ObservableSpec((1,)), n_max=4, unitarity_eps=1e-8)
        real_evolve = run.evolve
        mocker.patch.object(run, "evolve",
                            side_effect=lambda n: real_evolve(n)._replace(roundtrip_error=1e-3))
        with pytest.raises(UnitarityGuardError) as exc:
            run.gamma(2)
        assert exc.value.n == 2
        assert exc.value.epsilon == 1e-8
