"""
Unit tests for the oracle package: quadratic-field arithmetic, exact cat
exponents, big-integer orbits, analytic Heisenberg derivatives and the
rotator quadrature reference.
"""
import math
from fractions import Fraction

import numpy as np
import pytest

CAT = ((1, 1), (1, 2))
LOG_MU1 = math.log((3.0 + math.sqrt(5.0)) / 2.0)
PHI = (1.0 + math.sqrt(5.0)) / 2.0


@pytest.fixture(autouse=True)
def _import_guard():
    try:
        import quantum_exponents.oracle  # noqa: F401
    except ImportError as exc:
        pytest.skip(f"quantum_exponents not installed: {exc}")


# ── QuadraticNumber ───────────────────────────────────────────────────────────

class TestQuadraticNumber:
    def test_product_with_conjugate_is_norm(self):
        from quantum_exponents.oracle import QuadraticNumber
        x = QuadraticNumber(1, 1, 5)
        product = x * x.conjugate()
        assert product.b == 0
        assert product.a == x.norm() == -4

    def test_mixed_arithmetic(self):
        from quantum_exponents.oracle import QuadraticNumber
        x = QuadraticNumber(Fraction(1, 2), Fraction(1, 2), 5)
        assert (2 * x - 1) == QuadraticNumber(0, 1, 5)
        assert (1 - x) + x == QuadraticNumber(1, 0, 5)

    def test_sign_of_opposite_parts(self):
        from quantum_exponents.oracle import QuadraticNumber
        assert QuadraticNumber(3, -1, 5).sign() == 1
        assert QuadraticNumber(2, -1, 5).sign() == -1
        assert abs(QuadraticNumber(2, -1, 5)) == QuadraticNumber(-2, 1, 5)

    def test_log_abs_of_small_value(self):
        from quantum_exponents.oracle import QuadraticNumber
        stable = QuadraticNumber(Fraction(3, 2), Fraction(-1, 2), 5)
        assert stable.log_abs() == pytest.approx(-LOG_MU1, abs=1e-15)

    def test_log_abs_without_cancellation(self):
        from quantum_exponents.oracle import QuadraticNumber
        # phi^-40 = |F_40 phi - F_41| with Fibonacci numbers
        tiny = QuadraticNumber(Fraction(102334155, 2) - 165580141, Fraction(102334155, 2), 5)
        assert tiny.log_abs() == pytest.approx(-40 * math.log(PHI), rel=1e-12)

    def test_log_of_zero(self):
        from quantum_exponents.oracle import QuadraticNumber
        with pytest.raises(ValueError):
            QuadraticNumber(0, 0, 5).log_abs()

    def test_square_radicand_rejected(self):
        from quantum_exponents.oracle import QuadraticNumber
        with pytest.raises(ValueError):
            QuadraticNumber(1, 1, 4)

    def test_mixing_fields_rejected(self):
        from quantum_exponents.oracle import QuadraticNumber
        with pytest.raises(ValueError):
            QuadraticNumber(1, 1, 5) + QuadraticNumber(1, 1, 2)


# ── CatMatrix ─────────────────────────────────────────────────────────────────

class TestCatMatrix:
    def test_log_mu1_reference_value(self, cat_matrix):
        assert f"{cat_matrix.log_mu1:.6f}" == "0.962424"

    def test_eigenvalues(self, cat_matrix):
        mu1, mu2 = cat_matrix.eigenvalues
        assert mu1 == pytest.approx((3 + math.sqrt(5)) / 2, rel=1e-15)
        assert mu1 * mu2 == pytest.approx(1.0, abs=1e-14)
        assert cat_matrix.log_mu2 == pytest.approx(-cat_matrix.log_mu1, abs=1e-15)

    def test_eigenvector_is_exact(self, cat_matrix):
        from quantum_exponents.oracle import QuadraticNumber
        (a, b), (c, d) = cat_matrix.entries
        pairs = [
            (cat_matrix.unstable_eigenvector, cat_matrix.unstable_eigenvalue),
            (cat_matrix.stable_eigenvector, cat_matrix.stable_eigenvalue),
        ]
        for (e1, e2), mu in pairs:
            assert (e1 * a + e2 * b - mu * e1).is_zero()
            assert (e1 * c + e2 * d - mu * e2).is_zero()
            assert isinstance(e1, QuadraticNumber)

    def test_negative_trace(self):
        from quantum_exponents.oracle import CatMatrix
        matrix = CatMatrix(((-1, -1), (-1, -2)))
        assert float(matrix.unstable_eigenvalue) < -1
        assert matrix.log_mu1 == pytest.approx(LOG_MU1, abs=1e-15)

    @pytest.mark.parametrize("entries", [((2, 1), (1, 2)), ((1, 1), (0, 1)), ((1, 0), (0, 1))])
    def test_invalid_matrices(self, entries):
        from quantum_exponents.exceptions import InvalidMatrixError
        from quantum_exponents.oracle import CatMatrix
        with pytest.raises(InvalidMatrixError):
            CatMatrix(entries)

    def test_inverse_and_transpose(self, cat_matrix):
        assert cat_matrix.inverse.entries == ((2, -1), (-1, 1))
        assert cat_matrix.transpose.entries == CAT


# ── orbits and exponents ──────────────────────────────────────────────────────

def test_orbit_of_unit_vector(cat_matrix):
    from quantum_exponents.oracle import orbit
    assert orbit(cat_matrix, (1, 0), 3) == [(1, 0), (1, 1), (2, 3), (5, 8)]


def test_orbit_satisfies_cayley_hamilton(cat_matrix):
    from quantum_exponents.oracle import orbit
    points = orbit(cat_matrix, (1, 0), 120)
    for prev, cur, nxt in zip(points, points[1:], points[2:]):
        assert nxt == (3 * cur[0] - prev[0], 3 * cur[1] - prev[1])
    assert points[-1][0].bit_length() > 100


def test_transpose_orbit_of_nonsymmetric_matrix():
    from quantum_exponents.oracle import transpose_orbit
    assert transpose_orbit(((2, 1), (1, 1)), (1, 0), 1) == [(1, 0), (2, 1)]
    assert transpose_orbit(((1, 2), (1, 3)), (1, 0), 1) == [(1, 0), (1, 2)]


@pytest.mark.parametrize("v", [(1, 0), (0, 1), (3, -7), (0.25, 0.5)])
def test_generic_direction_gives_log_mu1(cat_matrix, v):
    from quantum_exponents.oracle import exact_exponent
    assert exact_exponent(cat_matrix, v, (1, 1)) == pytest.approx(LOG_MU1, abs=1e-15)


def test_stable_direction_gives_log_mu2(cat_matrix):
    from quantum_exponents.oracle import exact_exponent, orthogonal_to_unstable
    exact = orthogonal_to_unstable(cat_matrix)
    assert exact_exponent(cat_matrix, exact, (1, 0)) == pytest.approx(-LOG_MU1, abs=1e-15)
    floats = [float(c) for c in exact]
    assert exact_exponent(cat_matrix, floats, (1, 0)) == pytest.approx(-LOG_MU1, abs=1e-15)


def test_exponent_is_scale_invariant(cat_matrix):
    from quantum_exponents.oracle import exact_exponent
    assert exact_exponent(cat_matrix, (3, 0), (1, 0)) == exact_exponent(cat_matrix, (1, 0), (1, 0))
    assert exact_exponent(cat_matrix, (1, 0), (5, 0)) == exact_exponent(cat_matrix, (1, 0), (1, 0))


@pytest.mark.parametrize("v,l", [((0, 0), (1, 0)), ((1, 0), (0, 0))])
def test_zero_vectors_rejected(cat_matrix, v, l):
    from quantum_exponents.oracle import exact_exponent
    with pytest.raises(ValueError):
        exact_exponent(cat_matrix, v, l)


def test_finite_sequence_has_one_over_n_correction(cat_matrix):
    from quantum_exponents.oracle import finite_exponent_sequence
    sequence = finite_exponent_sequence(cat_matrix, (1, 0), (1, 0), 60)
    offset = math.log(PHI * math.sqrt(5.0))
    for n, value in sequence[19:]:
        assert value == pytest.approx(LOG_MU1 - offset / n, abs=1e-12)
    for n, value in sequence:
        assert abs(value - LOG_MU1) <= offset / n + 1e-12


def test_finite_sequence_along_stable_direction(cat_matrix):
    from quantum_exponents.oracle import finite_exponent_sequence, orthogonal_to_unstable
    stable = orthogonal_to_unstable(cat_matrix)
    n, value = finite_exponent_sequence(cat_matrix, stable, (1, 0), 30)[-1]
    assert n == 30
    assert value == pytest.approx(-LOG_MU1 + math.log(PHI) / 30, abs=1e-12)


def test_finite_sequence_marks_vanishing_projection(cat_matrix):
    from quantum_exponents.oracle import finite_exponent_sequence
    # v . M l = 0 for v = (1, -1), l = (1, 0), since M l = (1, 1)
    sequence = dict(finite_exponent_sequence(cat_matrix, (1, -1), (1, 0), 3))
    assert sequence[1] == -math.inf
    assert math.isfinite(sequence[2])


def test_oracle_summary(cat_matrix):
    from quantum_exponents.oracle import oracle_summary
    summary = oracle_summary(cat_matrix, (1, 0), (1.0, 0.0), n_max=10)
    assert summary["trace"] == 3
    assert summary["discriminant"] == 5
    assert summary["exponent"] == pytest.approx(LOG_MU1)
    assert summary["orbit"][:3] == [[1, 0], [1, 1], [2, 3]]
    assert summary["finite_sequence_last"] < LOG_MU1


# ── phases ────────────────────────────────────────────────────────────────────

def test_band_representative():
    from quantum_exponents.oracle import band_representative
    assert [band_representative(k, 8) for k in (0, 3, 4, 7, 8, -5, 13)] == [0, 3, -4, -1, 0, 3, -3]


@pytest.mark.parametrize("square_sum,turns", [(0, 0.0), (1, 0.5), (2, 0.0), (7, 0.5)])
def test_phase_turns_at_quarter_period(square_sum, turns):
    from quantum_exponents.oracle import reduce_phase_turns
    value = reduce_phase_turns(1.0 / (2.0 * math.pi), square_sum)
    assert min(abs(value - turns), 1.0 - abs(value - turns)) < 1e-12


def test_phase_turns_for_huge_sum():
    from quantum_exponents.oracle import reduce_phase_turns
    value = reduce_phase_turns(0.5, 10 ** 60 + 3)
    assert 0.0 <= value < 1.0
    assert reduce_phase_turns(0.5, 3) == pytest.approx((1.5 * math.pi) % 1.0, abs=1e-12)


def test_phase_turns_rejects_bad_input():
    from quantum_exponents.oracle import reduce_phase_turns
    with pytest.raises(ValueError):
        reduce_phase_turns(0.0, 3)
    with pytest.raises(ValueError):
        reduce_phase_turns(1.0, -1)


def test_phase_sum_square_sum(cat_matrix):
    from quantum_exponents.oracle import phase_sum
    phases = phase_sum(cat_matrix, (1, 0), 3, 1.0)
    assert phases.orbit == ((1, 0), (1, 1), (2, 3), (5, 8))
    assert phases.square_sum == 1 + 2 + 13
    assert phases.wavevector == (5, 8)


# ── analytic derivative field ─────────────────────────────────────────────────

class TestAnalyticDerivative:
    def test_step_zero_is_plain_derivative(self, cat_matrix):
        from quantum_exponents.grid import PeriodicGrid
        from quantum_exponents.oracle import analytic_derivative_field
        grid = PeriodicGrid(2, 32)
        x, y = grid.coordinates()
        field = analytic_derivative_field(cat_matrix, (1, 2), (0, 1), 1.0, 0, grid)
        expected = 2 * np.pi * 2 * np.cos(2 * np.pi * (x + 2 * y))
        assert np.allclose(field.values, expected, atol=1e-10)

    def test_growth_ratios_follow_orbit(self, cat_matrix):
        from quantum_exponents.grid import PeriodicGrid
        from quantum_exponents.oracle import analytic_derivative_field, orbit
        grid = PeriodicGrid(2, 64)
        T = 1.0 / (2.0 * math.pi)
        l = (1, 0)
        points = orbit(cat_matrix, l, 8)
        for v, start in (((1, 0), 0), ((0, 1), 1)):
            sup = [np.max(np.abs(analytic_derivative_field(cat_matrix, l, v, T, n, grid).values))
                   for n in range(9)]
            for n in range(start, 8):
                expected = abs(np.dot(v, points[n + 1])) / abs(np.dot(v, points[n]))
                assert sup[n + 1] / sup[n] == pytest.approx(expected, rel=1e-6)

    def test_central_stencil_matches_numerics(self, cat_matrix):
        from quantum_exponents.floquet import FloquetSpec, KineticSpec, SubstitutionKick
        from quantum_exponents.grid import PeriodicGrid, directional_derivative
        from quantum_exponents.heisenberg import HeisenbergRun, ObservableSpec
        from quantum_exponents.oracle import analytic_derivative_field
        grid = PeriodicGrid(2, 64)
        spec = FloquetSpec(grid, KineticSpec("cat_quadratic", 1.0), SubstitutionKick(CAT),
                           "kick_then_free")
        run = HeisenbergRun(spec, ObservableSpec((1, 0)), n_max=4)
        for n in range(5):
            numeric = directional_derivative(run.gamma(n), (1, 1)).field.values
            analytic = analytic_derivative_field(cat_matrix, (1, 0), (1, 1), 1.0, n, grid,
                                                 stencil="central").values
            scale = np.vdot(analytic, numeric) / np.vdot(analytic, analytic)
            error = np.max(np.abs(numeric - scale * analytic)) / np.max(np.abs(numeric))
            assert error < 1e-4
            assert scale == pytest.approx(1.0, abs=1e-6)

    def test_rejects_bad_arguments(self, cat_matrix):
        from quantum_exponents.grid import PeriodicGrid
        from quantum_exponents.oracle import analytic_derivative_field
        with pytest.raises(ValueError):
            analytic_derivative_field(cat_matrix, (1, 0), (1, 0), 1.0, 0, PeriodicGrid(1, 8))
        with pytest.raises(ValueError):
            analytic_derivative_field(cat_matrix, (1, 0), (1, 0), 1.0, -1, PeriodicGrid(2, 8))
        with pytest.raises(ValueError):
            analytic_derivative_field(cat_matrix, (1, 0), (1, 0), 1.0, 0, PeriodicGrid(2, 8),
                                      stencil="forward")


# ── rotator baseline ──────────────────────────────────────────────────────────

@pytest.mark.parametrize("l", [1, 2, -3])
def test_baseline_quadrature_matches_closed_form(l):
    from quantum_exponents.oracle import baseline_level, baseline_level_quadrature
    value, error = baseline_level_quadrature(l)
    assert value == pytest.approx(baseline_level(l), abs=1e-7)
    assert error < 1e-6


def test_baseline_of_unit_wavevector_is_log_pi():
    from quantum_exponents.oracle import baseline_level
    assert baseline_level(1) == pytest.approx(math.log(math.pi))
    with pytest.raises(ValueError):
        baseline_level(0)
