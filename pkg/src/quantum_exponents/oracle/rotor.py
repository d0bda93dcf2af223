"""
Quadrature reference for the rotator baseline level <D_0>.

With a flat state, gamma_0 = sin(2 pi l x) and D_0(x) = log|2 pi l cos(2 pi l x)|,
whose average over the circle is log(pi |l|).
"""
import math
from typing import Tuple

from scipy import integrate


def baseline_level(l: int = 1) -> float:
    """Closed form of the average of log|2 pi l cos(2 pi l x)| over [0, 1)."""
    if l == 0:
        raise ValueError("Observable wavevector l must be nonzero")
    return math.log(math.pi * abs(l))


def baseline_level_quadrature(l: int = 1) -> Tuple[float, float]:
    """
    The same average by adaptive quadrature.

    The integrand has logarithmic singularities at the zeros of
    cos(2 pi l x); they are passed to quad as break points.

    Returns:
        (value, absolute error estimate)
    """
    if l == 0:
        raise ValueError("Observable wavevector l must be nonzero")
    m = abs(l)
    zeros = [(2 * j + 1) / (4 * m) for j in range(2 * m)]
    value, error = integrate.quad(
        lambda x: math.log(abs(2.0 * math.pi * m * math.cos(2.0 * math.pi * m * x))),
        0.0,
        1.0,
        points=zeros,
        limit=200 * m,
    )
    return value, error
