"""
Gaussian Polynomial Packets
Exact model of Schwartz functions on R x Z/cZ as sums of poly(x) exp(kappa x^2 + beta x + gamma)
"""

import logging
import random
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import mpmath
import sympy

from ..errors import ClassCountMismatch, InvariantViolation

logger = logging.getLogger(__name__)

PI_I = sympy.pi * sympy.I
TWO_PI_I = 2 * PI_I


def expand(expr) -> sympy.Expr:
    """Canonical form for polynomials in sqrt(D), pi and I with rational coefficients."""
    return sympy.expand(sympy.sympify(expr))


def same(a, b) -> bool:
    return expand(a - b) == 0


def gamma_sign(a, b) -> Optional[int]:
    """exp(b) / exp(a) when a - b lies in pi i Z (either +1 or -1), else None."""
    ratio = expand((a - b) / PI_I)
    if not ratio.is_Integer:
        return None
    return -1 if int(ratio) % 2 else 1


def real_sign(expr) -> int:
    real = sympy.re(expand(expr))
    if real.is_negative:
        return -1
    if real.is_positive:
        return 1
    if real.is_zero:
        return 0
    value = sympy.N(real, 50)
    return (value > 0) - (value < 0)


def to_mpc(expr, bits: int = 128) -> mpmath.mpc:
    digits = int(bits * 0.30103) + 10
    value = sympy.N(sympy.sympify(expr), digits)
    re, im = value.as_real_imag()
    with mpmath.workprec(bits + 16):
        return mpmath.mpc(mpmath.mpf(str(sympy.N(re, digits))), mpmath.mpf(str(sympy.N(im, digits))))


def _trim(poly: Sequence) -> Tuple[sympy.Expr, ...]:
    coefficients = [expand(c) for c in poly]
    while coefficients and coefficients[-1] == 0:
        coefficients.pop()
    return tuple(coefficients)


def poly_add(p: Sequence, q: Sequence) -> Tuple[sympy.Expr, ...]:
    n = max(len(p), len(q))
    return _trim([(p[k] if k < len(p) else 0) + (q[k] if k < len(q) else 0) for k in range(n)])


def poly_scale(p: Sequence, s) -> Tuple[sympy.Expr, ...]:
    return _trim([c * s for c in p])


def poly_shift(p: Sequence, h) -> Tuple[sympy.Expr, ...]:
    """Coefficients of p(x - h)."""
    n = len(p)
    out = []
    for k in range(n):
        out.append(sum(p[j] * sympy.binomial(j, k) * (-h) ** (j - k) for j in range(k, n)))
    return _trim(out)


def poly_derivative(p: Sequence) -> Tuple[sympy.Expr, ...]:
    return _trim([k * p[k] for k in range(1, len(p))])


def poly_times_linear(p: Sequence, slope, intercept) -> Tuple[sympy.Expr, ...]:
    """Coefficients of p(x) * (slope x + intercept)."""
    out = [0] * (len(p) + 1)
    for k, c in enumerate(p):
        out[k] += intercept * c
        out[k + 1] += slope * c
    return _trim(out)


@dataclass(frozen=True)
class PacketTerm:
    """poly(x) exp(kappa x^2 + beta x + gamma); poly coefficients in ascending degree."""
    poly: Tuple[sympy.Expr, ...]
    kappa: sympy.Expr
    beta: sympy.Expr
    gamma: sympy.Expr = sympy.Integer(0)

    def decays(self) -> bool:
        return real_sign(self.kappa) < 0

    def to_dict(self) -> Dict:
        return {
            'poly': [str(c) for c in self.poly],
            'kappa': str(self.kappa),
            'beta': str(self.beta),
            'gamma': str(self.gamma),
        }

    @classmethod
    def from_dict(cls, data: Dict) -> 'PacketTerm':
        return cls(
            tuple(sympy.sympify(c) for c in data['poly']),
            sympy.sympify(data['kappa']),
            sympy.sympify(data['beta']),
            sympy.sympify(data.get('gamma', '0')),
        )


def _normalize_class(terms: Iterable[PacketTerm]) -> Tuple[PacketTerm, ...]:
    """
    Merge terms with equal (kappa, beta) and gamma equal modulo pi i; drop zero polynomials.

    A gamma that differs by an odd multiple of pi i flips the sign of the merged polynomial.
    """
    groups: List[List] = []
    for term in terms:
        for group in groups:
            if not (same(group[0], term.kappa) and same(group[1], term.beta)):
                continue
            sign = gamma_sign(group[2], term.gamma)
            if sign is not None:
                group[3] = poly_add(group[3], poly_scale(term.poly, sign))
                break
        else:
            groups.append([expand(term.kappa), expand(term.beta), expand(term.gamma), _trim(term.poly)])
    return tuple(PacketTerm(poly, kappa, beta, gamma) for kappa, beta, gamma, poly in groups if poly)


class GaussPolyPacket:
    """Element of the Schwartz space on R x Z/cZ; class alpha holds a list of terms."""

    def __init__(self, classes: Sequence[Iterable[PacketTerm]], require_decay: bool = True):
        if len(classes) == 0:
            raise ClassCountMismatch("a packet needs at least one residue class")
        self.classes: Tuple[Tuple[PacketTerm, ...], ...] = tuple(_normalize_class(terms) for terms in classes)
        if require_decay:
            for alpha, terms in enumerate(self.classes):
                for term in terms:
                    if not term.decays():
                        raise InvariantViolation(f"term in class {alpha} has Re(kappa) >= 0: kappa={term.kappa}")

    @property
    def c(self) -> int:
        return len(self.classes)

    @classmethod
    def zero(cls, c: int) -> 'GaussPolyPacket':
        return cls([[] for _ in range(c)])

    @classmethod
    def gaussian(cls, c: int, alpha: int = 0, kappa=-1, beta=0, poly: Sequence = (1,), require_decay: bool = True) -> 'GaussPolyPacket':
        """Single term poly(x) exp(kappa x^2 + beta x) in class alpha."""
        classes: List[List[PacketTerm]] = [[] for _ in range(c)]
        classes[alpha % c].append(PacketTerm(tuple(sympy.sympify(p) for p in poly), sympy.sympify(kappa), sympy.sympify(beta)))
        return cls(classes, require_decay=require_decay)

    def is_zero(self) -> bool:
        return all(len(terms) == 0 for terms in self.classes)

    def decays(self) -> bool:
        return all(term.decays() for terms in self.classes for term in terms)

    def _check(self, other: 'GaussPolyPacket'):
        if self.c != other.c:
            raise ClassCountMismatch(f"packets with {self.c} and {other.c} classes")

    def map_terms(self, fn, require_decay: bool = False) -> 'GaussPolyPacket':
        return GaussPolyPacket([[fn(alpha, t) for t in terms] for alpha, terms in enumerate(self.classes)], require_decay)

    def __add__(self, other: 'GaussPolyPacket') -> 'GaussPolyPacket':
        self._check(other)
        return GaussPolyPacket([a + b for a, b in zip(self.classes, other.classes)], require_decay=False)

    def __neg__(self) -> 'GaussPolyPacket':
        return self.scale(-1)

    def __sub__(self, other: 'GaussPolyPacket') -> 'GaussPolyPacket':
        return self + (-other)

    def scale(self, factor) -> 'GaussPolyPacket':
        return self.map_terms(lambda alpha, t: PacketTerm(poly_scale(t.poly, factor), t.kappa, t.beta, t.gamma))

    def phase_shift(self, exponent) -> 'GaussPolyPacket':
        """Multiply by exp(exponent) by adding it to every gamma."""
        return self.map_terms(lambda alpha, t: PacketTerm(t.poly, t.kappa, t.beta, expand(t.gamma + exponent)))

    def equals(self, other: 'GaussPolyPacket') -> bool:
        return (self - other).is_zero()

    def degree(self) -> int:
        return max((len(t.poly) - 1 for terms in self.classes for t in terms), default=-1)

    def to_json(self) -> Dict:
        return {'c': self.c, 'classes': {str(alpha): [t.to_dict() for t in terms] for alpha, terms in enumerate(self.classes)}}

    @classmethod
    def from_json(cls, data: Dict, require_decay: bool = True) -> 'GaussPolyPacket':
        c = int(data['c'])
        classes = [[PacketTerm.from_dict(t) for t in data['classes'].get(str(alpha), [])] for alpha in range(c)]
        return cls(classes, require_decay)

    def __repr__(self) -> str:
        return f"GaussPolyPacket(c={self.c}, terms={[len(t) for t in self.classes]})"


def eval_packet(f: GaussPolyPacket, x, alpha: int, bits: int = 128) -> mpmath.mpc:
    """Pointwise value f(x, alpha) at working precision."""
    with mpmath.workprec(bits):
        point = mpmath.mpmathify(x)
        total = mpmath.mpc(0)
        for term in f.classes[alpha % f.c]:
            poly_value = mpmath.mpc(0)
            for c in reversed(term.poly):
                poly_value = poly_value * point + to_mpc(c, bits)
            exponent = to_mpc(term.kappa, bits) * point ** 2 + to_mpc(term.beta, bits) * point + to_mpc(term.gamma, bits)
            total += poly_value * mpmath.exp(exponent)
        return +total


def _random_rational(rng: random.Random, low: int, high: int, denominator: int = 4) -> sympy.Rational:
    return sympy.Rational(rng.randint(low * denominator, high * denominator), denominator)


def random_packet(rng: random.Random, c: int, max_terms: int = 2, max_degree: int = 2) -> GaussPolyPacket:
    """Random decaying packet with Gaussian-rational data."""
    classes = []
    for _ in range(c):
        terms = []
        for _ in range(rng.randint(1, max_terms)):
            poly = tuple(_random_rational(rng, -2, 2) + sympy.I * _random_rational(rng, -2, 2)
                         for _ in range(rng.randint(1, max_degree + 1)))
            if all(p == 0 for p in poly):
                poly = (sympy.Integer(1),)
            kappa = -sympy.Rational(rng.randint(1, 8), 4) + sympy.I * _random_rational(rng, -1, 1)
            beta = _random_rational(rng, -1, 1) + sympy.I * _random_rational(rng, -1, 1)
            terms.append(PacketTerm(poly, kappa, beta))
        classes.append(terms)
    return GaussPolyPacket(classes)
