"""
Exact arithmetic in the real quadratic field Q(sqrt(d)).

Eigenvalues and eigenvectors of a hyperbolic 2x2 integer matrix live in
Q(sqrt(trace^2 - 4)); representing them exactly keeps the stable direction
exactly stable and lets big-integer orbits be projected without
cancellation.
"""
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from math import isqrt
from numbers import Rational

LOG_PRECISION = 60


def _decimal(q: Fraction) -> Decimal:
    return Decimal(q.numerator) / Decimal(q.denominator)


@dataclass(frozen=True)
class QuadraticNumber:
    """
    a + b sqrt(d) with rational a, b.

    d must be a positive non-square, so a + b sqrt(d) = 0 only when
    a = b = 0.
    """

    a: Fraction
    b: Fraction
    d: int

    def __post_init__(self):
        if self.d <= 0 or isqrt(self.d) ** 2 == self.d:
            raise ValueError(f"d must be a positive non-square integer, got {self.d}")
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    @classmethod
    def embed(cls, value, d: int) -> "QuadraticNumber":
        """Embed an int, Fraction or float (exactly) into Q(sqrt(d))."""
        if isinstance(value, QuadraticNumber):
            if value.d != d:
                raise ValueError(f"Cannot mix Q(sqrt({value.d})) with Q(sqrt({d}))")
            return value
        return cls(Fraction(value), Fraction(0), d)

    def _coerce(self, other):
        if isinstance(other, (QuadraticNumber, Rational, float)):
            return QuadraticNumber.embed(other, self.d)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QuadraticNumber(self.a + other.a, self.b + other.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(-self.a, -self.b, self.d)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QuadraticNumber(
            self.a * other.a + self.b * other.b * self.d,
            self.a * other.b + self.b * other.a,
            self.d,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "QuadraticNumber":
        return QuadraticNumber(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        """(a + b sqrt d)(a - b sqrt d), exact."""
        return self.a * self.a - self.b * self.b * self.d

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def sign(self) -> int:
        if self.is_zero():
            return 0
        if self.a >= 0 and self.b >= 0:
            return 1
        if self.a <= 0 and self.b <= 0:
            return -1
        # opposite signs: the larger square wins
        if self.a * self.a > self.b * self.b * self.d:
            return 1 if self.a > 0 else -1
        return 1 if self.b > 0 else -1

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def to_decimal(self) -> Decimal:
        with localcontext() as ctx:
            ctx.prec = LOG_PRECISION
            return _decimal(self.a) + _decimal(self.b) * Decimal(self.d).sqrt()

    def __float__(self) -> float:
        return float(self.to_decimal())

    def log_abs(self) -> float:
        """
        log|a + b sqrt d| without cancellation.

        Opposite-sign parts go through the conjugate,
        |x| = |norm(x)| / |conjugate(x)|, whose parts share a sign.

        Raises:
            ValueError: for zero
        """
        if self.is_zero():
            raise ValueError("log of zero")
        with localcontext() as ctx:
            ctx.prec = LOG_PRECISION
            if self.a * self.b >= 0:
                return float(abs(self.to_decimal()).ln())
            conjugate = abs(self.conjugate().to_decimal())
            return float(_decimal(abs(self.norm())).ln() - conjugate.ln())
