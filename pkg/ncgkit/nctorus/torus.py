"""
Smooth Noncommutative Torus
Finitely supported Fourier series in U, V with exact product, trace, derivations and delta_tau
"""

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, Mapping, Optional, Tuple, Union

import mpmath

from ..errors import InvariantViolation, ParameterDomainError
from ..freealg import FreeElement, GeneratorTable, RewriteSystem, UniScalar, theta_phase
from .quadratic import QuadIrr, QuadraticNumber

logger = logging.getLogger(__name__)

Index = Tuple[int, int]
Theta = Union[Fraction, int, QuadIrr]
PhaseExponent = Callable[[int, int, int, int], int]


def commrel_exponent(n: int, m: int, p: int, q: int) -> int:
    """(U^n V^m)(U^p V^q) = e^{2 pi i theta * (-m p)} U^{n+p} V^{m+q}, from UV = e^{2 pi i theta} VU."""
    return -m * p


def theta_value(theta: Theta, bits: int = 128) -> mpmath.mpf:
    if isinstance(theta, QuadIrr):
        return theta.to_mpf(bits)
    if isinstance(theta, QuadraticNumber):
        return theta.to_mpf(bits)
    theta = Fraction(theta)
    with mpmath.workprec(bits):
        return mpmath.mpf(theta.numerator) / theta.denominator


class TorusElement:
    """sum a_{n,m} U^n V^m times the symbolic factor <2 pi i>^twopi_power."""

    __slots__ = ('_terms', 'twopi_power')
    __hash__ = None

    def __init__(self, terms: Optional[Union[Mapping[Index, UniScalar], Iterable[Tuple[Index, UniScalar]]]] = None, twopi_power: int = 0):
        acc: Dict[Index, UniScalar] = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for (n, m), coefficient in items:
                key = (int(n), int(m))
                coefficient = UniScalar.coerce(coefficient)
                acc[key] = acc[key] + coefficient if key in acc else coefficient
        self._terms = {key: c for key, c in acc.items() if not c.is_zero()}
        self.twopi_power = twopi_power

    @classmethod
    def one(cls) -> 'TorusElement':
        return cls({(0, 0): 1})

    @classmethod
    def monomial(cls, n: int, m: int, coefficient=1) -> 'TorusElement':
        return cls({(n, m): coefficient})

    @classmethod
    def U(cls) -> 'TorusElement':
        return cls.monomial(1, 0)

    @classmethod
    def V(cls) -> 'TorusElement':
        return cls.monomial(0, 1)

    @property
    def terms(self) -> Dict[Index, UniScalar]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, n: int, m: int) -> UniScalar:
        return self._terms.get((n, m), UniScalar.zero())

    def _tag_for(self, other: 'TorusElement') -> int:
        if self.is_zero():
            return other.twopi_power
        if other.is_zero() or self.twopi_power == other.twopi_power:
            return self.twopi_power
        raise InvariantViolation(
            f"cannot add elements carrying <2 pi i>^{self.twopi_power} and <2 pi i>^{other.twopi_power}")

    def __add__(self, other: 'TorusElement') -> 'TorusElement':
        tag = self._tag_for(other)
        return TorusElement(list(self._terms.items()) + list(other._terms.items()), tag)

    def __neg__(self) -> 'TorusElement':
        return TorusElement({k: -c for k, c in self._terms.items()}, self.twopi_power)

    def __sub__(self, other: 'TorusElement') -> 'TorusElement':
        return self + (-other)

    def scale(self, scalar) -> 'TorusElement':
        scalar = UniScalar.coerce(scalar)
        return TorusElement({k: c * scalar for k, c in self._terms.items()}, self.twopi_power)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TorusElement):
            return NotImplemented
        return (self - other).is_zero()

    def __repr__(self) -> str:
        tag = f", <2pi i>^{self.twopi_power}" if self.twopi_power else ''
        return f"TorusElement({len(self._terms)} terms{tag})"


def torus_mul(x: TorusElement, y: TorusElement, theta: Theta, exponent: PhaseExponent = commrel_exponent) -> TorusElement:
    """Bilinear extension of the monomial law; phases stay exact UniScalars."""
    products = []
    for (n, m), a in x.terms.items():
        for (p, q), b in y.terms.items():
            products.append(((n + p, m + q), a * b * theta_phase(theta, exponent(n, m, p, q))))
    return TorusElement(products, x.twopi_power + y.twopi_power)


def trace_chi(x: TorusElement) -> UniScalar:
    """The (0,0) Fourier coefficient; the <2 pi i> tag of x multiplies the result."""
    return x.coefficient(0, 0)


def delta(j: int, x: TorusElement) -> TorusElement:
    """delta_1(U^n V^m) = 2 pi i n U^n V^m, delta_2(U^n V^m) = 2 pi i m U^n V^m."""
    if j not in (1, 2):
        raise ParameterDomainError(f"derivation index must be 1 or 2, got {j}")
    return TorusElement(
        {(n, m): c * (n if j == 1 else m) for (n, m), c in x.terms.items()},
        x.twopi_power + 1,
    )


def tau_components(x: TorusElement) -> Tuple[TorusElement, TorusElement]:
    """(delta_1 x, delta_2 x), so that delta_tau x = tau * delta_1 x + delta_2 x exactly."""
    return delta(1, x), delta(2, x)


def leibniz_defect(j: int, x: TorusElement, y: TorusElement, theta: Theta) -> TorusElement:
    """delta_j(xy) - delta_j(x) y - x delta_j(y); exactly zero for a derivation."""
    return delta(j, torus_mul(x, y, theta)) - torus_mul(delta(j, x), y, theta) - torus_mul(x, delta(j, y), theta)


@dataclass(frozen=True)
class ComplexStructure:
    """tau with Im(tau) < 0."""
    tau: mpmath.mpc

    def __post_init__(self):
        if not mpmath.im(self.tau) < 0:
            raise ParameterDomainError(f"complex structure needs Im(tau) < 0, got {self.tau}")

    @classmethod
    def from_parts(cls, re, im) -> 'ComplexStructure':
        re, im = Fraction(re), Fraction(im)
        return cls(mpmath.mpc(mpmath.mpf(re.numerator) / re.denominator, mpmath.mpf(im.numerator) / im.denominator))


class NumericTorusElement:
    """Fourier series with mpmath complex coefficients."""

    def __init__(self, terms: Mapping[Index, mpmath.mpc], bits: int = 128):
        self.bits = bits
        self.terms = {k: mpmath.mpc(v) for k, v in terms.items()}

    @classmethod
    def from_exact(cls, x: TorusElement, theta: Theta, bits: int = 128) -> 'NumericTorusElement':
        value = theta_value(theta, bits)
        with mpmath.workprec(bits):
            factor = (2 * mpmath.pi * 1j) ** x.twopi_power
            return cls({k: c.to_complex(value, bits) * factor for k, c in x.terms.items()}, bits)

    def mul(self, other: 'NumericTorusElement', theta: Theta, exponent: PhaseExponent = commrel_exponent) -> 'NumericTorusElement':
        value = theta_value(theta, self.bits)
        out: Dict[Index, mpmath.mpc] = {}
        with mpmath.workprec(self.bits):
            for (n, m), a in self.terms.items():
                for (p, q), b in other.terms.items():
                    key = (n + p, m + q)
                    out[key] = out.get(key, mpmath.mpc(0)) + a * b * mpmath.expjpi(2 * value * exponent(n, m, p, q))
        return NumericTorusElement(out, self.bits)

    def __sub__(self, other: 'NumericTorusElement') -> 'NumericTorusElement':
        out = dict(self.terms)
        with mpmath.workprec(self.bits):
            for k, v in other.terms.items():
                out[k] = out.get(k, mpmath.mpc(0)) - v
        return NumericTorusElement(out, self.bits)

    def max_abs(self) -> mpmath.mpf:
        with mpmath.workprec(self.bits):
            return max((abs(v) for v in self.terms.values()), default=mpmath.mpf(0))


def delta_tau(tau: ComplexStructure, x: TorusElement, theta: Theta = Fraction(0), bits: int = 128) -> NumericTorusElement:
    """Coefficient (n,m) times 2 pi i (n tau + m) at working precision."""
    numeric = NumericTorusElement.from_exact(x, theta, bits)
    with mpmath.workprec(bits):
        scale = 2 * mpmath.pi * 1j
        return NumericTorusElement(
            {(n, m): c * scale * (n * tau.tau + m) for (n, m), c in numeric.terms.items()}, bits)


def delta_tau_leibniz_defect(tau: ComplexStructure, x: TorusElement, y: TorusElement, theta: Theta, bits: int = 128) -> mpmath.mpf:
    """max |delta_tau(xy) - delta_tau(x) y - x delta_tau(y)| at working precision."""
    nx = NumericTorusElement.from_exact(x, theta, bits)
    ny = NumericTorusElement.from_exact(y, theta, bits)
    lhs = delta_tau(tau, torus_mul(x, y, theta), theta, bits)
    rhs1 = delta_tau(tau, x, theta, bits).mul(ny, theta)
    rhs2 = nx.mul(delta_tau(tau, y, theta, bits), theta)
    return (lhs - rhs1 - rhs2).max_abs()


def torus_rewrite_system(theta: Theta) -> RewriteSystem:
    """Unitaries U, V with UV = e^{2 pi i theta} VU; order U < U* < V < V*."""
    table = GeneratorTable.build(['U', 'U*', 'V', 'V*'], pairs=[('U', 'U*'), ('V', 'V*')])
    U, Us, V, Vs = range(4)
    lam = theta_phase(theta, 1)
    swaps = {
        (V, U): lam.star(),
        (V, Us): lam,
        (Vs, U): lam,
        (Vs, Us): lam.star(),
    }
    unit = FreeElement.unit()
    substitutions = [((U, Us), unit), ((Us, U), unit), ((V, Vs), unit), ((Vs, V), unit)]
    return RewriteSystem(table, swaps, substitutions, name='torus')


def random_element(rng: random.Random, terms: int = 20, radius: int = 3, theta_formal: bool = True) -> TorusElement:
    """Random element with small integer coefficients and occasional phases."""
    pieces = []
    for _ in range(terms):
        key = (rng.randint(-radius, radius), rng.randint(-radius, radius))
        coefficient = UniScalar.phase(Fraction(rng.randint(0, 11), 12), rng.randint(-2, 2) if theta_formal else 0,
                                      coefficient=rng.choice([-3, -2, -1, 1, 2, 3]))
        pieces.append((key, coefficient))
    return TorusElement(pieces)


def k0_rank(n: int, m: int, theta: QuadIrr) -> QuadraticNumber:
    """n + m theta, the image of (n, m) under the rank map into Z + theta Z."""
    return QuadraticNumber(n) + theta.value * m


def module_rank(d: int, c: int, theta: QuadIrr) -> QuadraticNumber:
    """Rank |c theta + d| of the basic module E_{d,c}(theta), sign decided exactly."""
    return abs(k0_rank(d, c, theta))
