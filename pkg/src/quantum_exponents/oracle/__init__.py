"""
Exact and quadrature references: the cat-map exponent, big-integer orbits,
the analytic Heisenberg derivative field and the rotator baseline level.
"""
from .cat import (
    PI_DIGITS,
    STENCIL_CENTRAL,
    STENCIL_EXACT,
    CatMatrix,
    PhaseSum,
    analytic_derivative_field,
    as_cat_matrix,
    band_representative,
    exact_direction,
    exact_exponent,
    finite_exponent_sequence,
    oracle_summary,
    orbit,
    orthogonal_to_unstable,
    phase_sum,
    reduce_phase_turns,
    transpose_orbit,
)
from .quadratic import QuadraticNumber
from .rotor import baseline_level, baseline_level_quadrature

__all__ = [
    'PI_DIGITS',
    'STENCIL_CENTRAL',
    'STENCIL_EXACT',
    'CatMatrix',
    'PhaseSum',
    'analytic_derivative_field',
    'as_cat_matrix',
    'band_representative',
    'exact_direction',
    'exact_exponent',
    'finite_exponent_sequence',
    'oracle_summary',
    'orbit',
    'orthogonal_to_unstable',
    'phase_sum',
    'reduce_phase_turns',
    'transpose_orbit',
    'QuadraticNumber',
    'baseline_level',
    'baseline_level_quadrature',
]
