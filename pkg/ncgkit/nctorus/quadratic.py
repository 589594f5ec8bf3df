"""
Quadratic Numbers
Exact arithmetic in Q(sqrt D) with sign determination and the quadratic irrationality type
"""

import math
import logging
from fractions import Fraction
from functools import total_ordering
from typing import Union

import mpmath
import sympy

from ..errors import ParameterDomainError, PoleError

logger = logging.getLogger(__name__)

Rational = Union[int, Fraction]


def _sign(q: Fraction) -> int:
    return (q > 0) - (q < 0)


def squarefree_part(n: int):
    """Write n = k^2 * D with D square-free; returns (k, D)."""
    if n <= 0:
        raise ParameterDomainError(f"radicand must be positive, got {n}")
    k, d = 1, 1
    for prime, exponent in sympy.factorint(n).items():
        k *= prime ** (exponent // 2)
        if exponent % 2:
            d *= prime
    return k, d


@total_ordering
class QuadraticNumber:
    """u + v sqrt(D) with rational u, v and square-free D > 1 (D = 1 only for rationals)."""

    __slots__ = ('u', 'v', 'D')

    def __init__(self, u: Rational, v: Rational = 0, D: int = 1):
        self.u = Fraction(u)
        self.v = Fraction(v)
        self.D = int(D)
        if self.D == 1:
            self.u, self.v = self.u + self.v, Fraction(0)
        if self.v == 0:
            self.D = 1

    @classmethod
    def coerce(cls, value, D: int = 1) -> 'QuadraticNumber':
        if isinstance(value, QuadraticNumber):
            return value
        if isinstance(value, QuadIrr):
            return value.value
        return cls(Fraction(value), 0, D)

    def _field(self, other: 'QuadraticNumber') -> int:
        if self.D != 1 and other.D != 1 and self.D != other.D:
            raise ParameterDomainError(f"cannot mix Q(sqrt {self.D}) and Q(sqrt {other.D})")
        return max(self.D, other.D)

    def __add__(self, other) -> 'QuadraticNumber':
        other = QuadraticNumber.coerce(other)
        return QuadraticNumber(self.u + other.u, self.v + other.v, self._field(other))

    __radd__ = __add__

    def __neg__(self) -> 'QuadraticNumber':
        return QuadraticNumber(-self.u, -self.v, self.D)

    def __sub__(self, other) -> 'QuadraticNumber':
        return self + (-QuadraticNumber.coerce(other))

    def __rsub__(self, other) -> 'QuadraticNumber':
        return QuadraticNumber.coerce(other) - self

    def __mul__(self, other) -> 'QuadraticNumber':
        other = QuadraticNumber.coerce(other)
        D = self._field(other)
        return QuadraticNumber(self.u * other.u + self.v * other.v * D, self.u * other.v + self.v * other.u, D)

    __rmul__ = __mul__

    def conjugate(self) -> 'QuadraticNumber':
        return QuadraticNumber(self.u, -self.v, self.D)

    def norm(self) -> Fraction:
        return self.u * self.u - self.v * self.v * self.D

    def __truediv__(self, other) -> 'QuadraticNumber':
        other = QuadraticNumber.coerce(other)
        if other.is_zero():
            raise PoleError("division by zero in Q(sqrt D)")
        n = other.norm()
        numerator = self * other.conjugate()
        return QuadraticNumber(numerator.u / n, numerator.v / n, numerator.D)

    def __rtruediv__(self, other) -> 'QuadraticNumber':
        return QuadraticNumber.coerce(other) / self

    def is_zero(self) -> bool:
        return self.u == 0 and self.v == 0

    def is_rational(self) -> bool:
        return self.v == 0

    def sign(self) -> int:
        """Exact sign, decided by comparing u^2 with v^2 D when u and v disagree."""
        su, sv = _sign(self.u), _sign(self.v)
        if sv == 0:
            return su
        if su == 0 or su == sv:
            return sv
        return su if self.u * self.u > self.v * self.v * self.D else sv

    def __abs__(self) -> 'QuadraticNumber':
        return -self if self.sign() < 0 else self

    def __eq__(self, other) -> bool:
        try:
            other = QuadraticNumber.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return (self - other).is_zero()

    def __lt__(self, other) -> bool:
        return (self - QuadraticNumber.coerce(other)).sign() < 0

    def __hash__(self) -> int:
        return hash((self.u, self.v, self.D))

    def floor(self) -> int:
        with mpmath.workdps(60):
            candidate = int(mpmath.floor(self.to_mpf()))
        while self - candidate < 0:
            candidate -= 1
        while self - (candidate + 1) >= 0:
            candidate += 1
        return candidate

    def to_mpf(self, bits: int = 128) -> mpmath.mpf:
        with mpmath.workprec(bits + 16):
            value = mpmath.mpf(self.u.numerator) / self.u.denominator
            if self.v:
                value += mpmath.mpf(self.v.numerator) / self.v.denominator * mpmath.sqrt(self.D)
        return value

    def __float__(self) -> float:
        return float(self.to_mpf(64))

    def to_sympy(self) -> sympy.Expr:
        return sympy.Rational(self.u.numerator, self.u.denominator) + sympy.Rational(self.v.numerator, self.v.denominator) * sympy.sqrt(self.D)

    def __repr__(self) -> str:
        if self.v == 0:
            return f"QuadraticNumber({self.u})"
        return f"QuadraticNumber({self.u} + {self.v}*sqrt({self.D}))"


class QuadIrr:
    """Quadratic irrationality theta = (p + s sqrt D) / q in canonical form.

    Canonical form: integers p, s, q with q > 0, s != 0, gcd(p, s, q) = 1 and
    D square-free and greater than one.
    """

    __slots__ = ('p', 's', 'q', 'D')

    def __init__(self, p: Rational, s: Rational, q: Rational, D: int):
        p, s, q = Fraction(p), Fraction(s), Fraction(q)
        if q == 0:
            raise ParameterDomainError("denominator q must be nonzero")
        k, D = squarefree_part(int(D))
        s = s * k
        if D == 1 or s == 0:
            raise ParameterDomainError("theta is rational; a quadratic irrationality needs s != 0 and a non-square D")
        # clear denominators, then divide out the content
        common = math.lcm(p.denominator, s.denominator, q.denominator)
        p, s, q = int(p * common), int(s * common), int(q * common)
        if q < 0:
            p, s, q = -p, -s, -q
        g = math.gcd(math.gcd(p, s), q)
        self.p, self.s, self.q, self.D = p // g, s // g, q // g, D

    @classmethod
    def from_value(cls, value: QuadraticNumber) -> 'QuadIrr':
        if value.v == 0:
            raise ParameterDomainError(f"{value!r} is rational")
        return cls(value.u, value.v, 1, value.D)

    @property
    def value(self) -> QuadraticNumber:
        return QuadraticNumber(Fraction(self.p, self.q), Fraction(self.s, self.q), self.D)

    def conjugate(self) -> 'QuadIrr':
        return QuadIrr(self.p, -self.s, self.q, self.D)

    def minimal_polynomial(self):
        """Primitive integer (A, B, C) with A theta^2 + B theta + C = 0 and A > 0."""
        # q theta - p = s sqrt D  =>  q^2 theta^2 - 2pq theta + p^2 - s^2 D = 0
        A, B, C = self.q * self.q, -2 * self.p * self.q, self.p * self.p - self.s * self.s * self.D
        g = math.gcd(math.gcd(A, B), C)
        return A // g, B // g, C // g

    def to_mpf(self, bits: int = 128) -> mpmath.mpf:
        return self.value.to_mpf(bits)

    def to_sympy(self) -> sympy.Expr:
        return self.value.to_sympy()

    def __float__(self) -> float:
        return float(self.value)

    def __eq__(self, other) -> bool:
        if isinstance(other, QuadIrr):
            return (self.p, self.s, self.q, self.D) == (other.p, other.s, other.q, other.D)
        if isinstance(other, QuadraticNumber):
            return self.value == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.p, self.s, self.q, self.D))

    def __str__(self) -> str:
        sign = '+' if self.s > 0 else '-'
        return f"({self.p} {sign} {abs(self.s)}*sqrt({self.D}))/{self.q}"

    def __repr__(self) -> str:
        return f"QuadIrr({self})"
