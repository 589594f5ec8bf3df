"""
Unimodular Scalars
Exact rational combinations of phases e^{2 pi i (a + b theta)} with formal theta
"""

import math
import logging
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Mapping, Optional, Tuple, Union

import mpmath
import sympy

from ..errors import ParameterDomainError

logger = logging.getLogger(__name__)

Exponent = Tuple[Fraction, Fraction]
Rational = Union[int, Fraction]

HALF = Fraction(1, 2)
_X = sympy.Symbol('x')


def _reduce_exponent(a: Fraction) -> Tuple[Fraction, int]:
    """Bring a into [0, 1/2) using e^{2 pi i a} = -e^{2 pi i (a - 1/2)}."""
    a = a - math.floor(a)
    if a >= HALF:
        return a - HALF, -1
    return a, 1


@lru_cache(maxsize=512)
def _cyclotomic(order: int) -> sympy.Poly:
    return sympy.Poly(sympy.cyclotomic_poly(order, _X), _X, domain=sympy.QQ)


@lru_cache(maxsize=65536)
def _slice_is_zero(items: Tuple[Tuple[Fraction, Fraction], ...]) -> bool:
    """Exact zero test for sum of q * e^{2 pi i a} over (a, q) items.

    Exponents lie in [0, 1/2) and are pairwise distinct, so one or two
    terms never cancel.  Otherwise the sum is P(zeta_N) with
    P(x) = sum q x^{aN}, which vanishes iff Phi_N divides P.
    """
    if len(items) <= 2:
        return False
    order = math.lcm(*(a.denominator for a, _ in items))
    coefficients = {}
    for a, q in items:
        coefficients[(int(a * order),)] = sympy.Rational(q.numerator, q.denominator)
    poly = sympy.Poly.from_dict(coefficients, _X, domain=sympy.QQ)
    return poly.rem(_cyclotomic(order)).is_zero


class UniScalar:
    """Exact complex scalar sum_{(a,b)} q_{a,b} e^{2 pi i (a + b theta)}.

    Coefficients are rationals, a is stored in [0, 1/2) (a subset of the
    [0, 1) fundamental domain) and b is the coefficient of the formal
    parameter theta.  Equality is decided by an exact cyclotomic test, so
    instances are deliberately unhashable.
    """

    __slots__ = ('_terms',)
    __hash__ = None

    def __init__(self, terms: Optional[Union[Mapping[Exponent, Rational], Iterable[Tuple[Exponent, Rational]]]] = None):
        acc: Dict[Exponent, Fraction] = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for (a, b), q in items:
                q = Fraction(q)
                if q == 0:
                    continue
                a, sign = _reduce_exponent(Fraction(a))
                key = (a, Fraction(b))
                acc[key] = acc.get(key, Fraction(0)) + sign * q
        self._terms = {key: q for key, q in acc.items() if q != 0}

    # construction

    @classmethod
    def zero(cls) -> 'UniScalar':
        return cls()

    @classmethod
    def one(cls) -> 'UniScalar':
        return cls({(Fraction(0), Fraction(0)): 1})

    @classmethod
    def rational(cls, q: Rational) -> 'UniScalar':
        return cls({(Fraction(0), Fraction(0)): q})

    @classmethod
    def phase(cls, a: Rational = 0, b: Rational = 0, coefficient: Rational = 1) -> 'UniScalar':
        """coefficient * e^{2 pi i (a + b theta)}."""
        return cls({(Fraction(a), Fraction(b)): coefficient})

    @classmethod
    def i(cls) -> 'UniScalar':
        return cls.phase(Fraction(1, 4))

    @classmethod
    def coerce(cls, value) -> 'UniScalar':
        if isinstance(value, UniScalar):
            return value
        if isinstance(value, (int, Fraction)):
            return cls.rational(value)
        raise TypeError(f"cannot coerce {type(value).__name__} to UniScalar")

    # inspection

    @property
    def terms(self) -> Dict[Exponent, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        slices: Dict[Fraction, list] = {}
        for (a, b), q in self._terms.items():
            slices.setdefault(b, []).append((a, q))
        return all(_slice_is_zero(tuple(sorted(items))) for items in slices.values())

    def is_unimodular_monomial(self) -> bool:
        """True for a single phase with coefficient +-1."""
        return len(self._terms) == 1 and abs(next(iter(self._terms.values()))) == 1

    def as_rational(self) -> Optional[Fraction]:
        """The rational value when the scalar is a plain rational, else None."""
        if not self._terms:
            return Fraction(0)
        if set(self._terms) == {(Fraction(0), Fraction(0))}:
            return self._terms[(Fraction(0), Fraction(0))]
        return None

    # arithmetic

    def __add__(self, other) -> 'UniScalar':
        try:
            other = UniScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return UniScalar(list(self._terms.items()) + list(other._terms.items()))

    __radd__ = __add__

    def __neg__(self) -> 'UniScalar':
        return UniScalar({key: -q for key, q in self._terms.items()})

    def __sub__(self, other) -> 'UniScalar':
        try:
            other = UniScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> 'UniScalar':
        return UniScalar.coerce(other) - self

    def __mul__(self, other) -> 'UniScalar':
        if isinstance(other, (int, Fraction)):
            return UniScalar({key: q * other for key, q in self._terms.items()})
        if not isinstance(other, UniScalar):
            return NotImplemented
        products = []
        for (a1, b1), q1 in self._terms.items():
            for (a2, b2), q2 in other._terms.items():
                products.append(((a1 + a2, b1 + b2), q1 * q2))
        return UniScalar(products)

    __rmul__ = __mul__

    def star(self) -> 'UniScalar':
        """Complex conjugate: negate exponents, keep rational coefficients."""
        return UniScalar({(-a, -b): q for (a, b), q in self._terms.items()})

    conjugate = star

    def __eq__(self, other) -> bool:
        try:
            other = UniScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return (self - other).is_zero()

    def __bool__(self) -> bool:
        return not self.is_zero()

    # evaluation

    def to_complex(self, theta=None, bits: int = 128) -> mpmath.mpc:
        """Numeric value at working precision; theta is needed when b-exponents occur."""
        with mpmath.workprec(bits):
            total = mpmath.mpc(0)
            for (a, b), q in self._terms.items():
                if b != 0 and theta is None:
                    raise ParameterDomainError("theta value required to evaluate a formal phase")
                angle = mpmath.mpf(a.numerator) / a.denominator
                if b != 0:
                    angle += (mpmath.mpf(b.numerator) / b.denominator) * mpmath.mpmathify(theta)
                total += (mpmath.mpf(q.numerator) / q.denominator) * mpmath.expjpi(2 * angle)
            return +total

    def to_sympy(self, theta=None) -> sympy.Expr:
        """Exact sympy expression; theta may be a sympy expression or a symbol."""
        theta_expr = sympy.Symbol('theta', real=True) if theta is None else sympy.sympify(theta)
        total = sympy.Integer(0)
        for (a, b), q in self._terms.items():
            exponent = sympy.Rational(a.numerator, a.denominator) + sympy.Rational(b.numerator, b.denominator) * theta_expr
            total += sympy.Rational(q.numerator, q.denominator) * sympy.exp(2 * sympy.pi * sympy.I * exponent)
        return total

    def __repr__(self) -> str:
        if not self._terms:
            return 'UniScalar(0)'
        parts = []
        for (a, b), q in sorted(self._terms.items()):
            if a == 0 and b == 0:
                parts.append(f"{q}")
                continue
            exponent = ' + '.join(filter(None, [str(a) if a else '', f"{b}*theta" if b else '']))
            parts.append(f"{q}*e(2pi i({exponent}))")
        return 'UniScalar(' + ' + '.join(parts) + ')'


def theta_phase(theta, k: Rational) -> UniScalar:
    """e^{2 pi i k theta}; rational theta gives a cyclotomic phase, anything else stays formal."""
    if isinstance(theta, (int, Fraction)):
        return UniScalar.phase(a=Fraction(k) * Fraction(theta))
    return UniScalar.phase(b=k)
