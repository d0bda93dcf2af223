"""
Floquet operators for kicked systems on the circle and the torus.

This package provides the unitary one-period evolution for quantum kicked
rotators (multiplicative kicks) and the configurational quantum cat
(substitution kicks), with FFT free evolution in between.
"""
from .base import BoundKick
from .kicks import (
    MultiplicativeKick,
    SubstitutionKick,
    PhaseKick,
    PermutationKick,
    as_int_matrix,
    integer_inverse,
)
from .kinetic import KineticSpec, KineticVariant, kinetic_eigenvalue, kinetic_phase
from .operator import (
    CompositionOrder,
    FloquetOperator,
    FloquetSpec,
    KickSpec,
    apply_floquet,
    apply_floquet_inverse,
    apply_free,
    apply_kick,
    apply_kick_inverse,
    forward_transform,
    inverse_transform,
    operator_for,
    unitarity_roundtrip_error,
)

__all__ = [
    'BoundKick',
    'MultiplicativeKick',
    'SubstitutionKick',
    'PhaseKick',
    'PermutationKick',
    'as_int_matrix',
    'integer_inverse',
    'KineticSpec',
    'KineticVariant',
    'kinetic_eigenvalue',
    'kinetic_phase',
    'CompositionOrder',
    'FloquetOperator',
    'FloquetSpec',
    'KickSpec',
    'apply_floquet',
    'apply_floquet_inverse',
    'apply_free',
    'apply_kick',
    'apply_kick_inverse',
    'forward_transform',
    'inverse_transform',
    'operator_for',
    'unitarity_roundtrip_error',
]
