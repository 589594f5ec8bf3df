"""
Basic Modules E_{d,c}(theta)
Right A_theta action, left A_{g theta} action and holomorphic structures on Gaussian packets
"""

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

import sympy

from ..errors import ClassCountMismatch, InvariantViolation, ParameterDomainError
from ..freealg import FreeElement, UniScalar
from ..nctorus.morita import morita_theta
from ..nctorus.quadratic import QuadIrr, QuadraticNumber
from ..nctorus.sl2 import SL2Mat
from ..nctorus.torus import torus_rewrite_system
from .packets import (
    TWO_PI_I,
    GaussPolyPacket,
    PacketTerm,
    expand,
    poly_derivative,
    poly_add,
    poly_shift,
    poly_times_linear,
    real_sign,
)

logger = logging.getLogger(__name__)

ComplexPair = Tuple[Fraction, Fraction]

# right-action letters; '*' marks the inverse (adjoint) generator
RIGHT_LETTERS = ('U', 'U*', 'V', 'V*')


def _rational(q) -> sympy.Rational:
    q = Fraction(q)
    return sympy.Rational(q.numerator, q.denominator)


def _complex(pair: Optional[ComplexPair]) -> Optional[sympy.Expr]:
    if pair is None:
        return None
    re_part, im_part = pair
    return _rational(re_part) + sympy.I * _rational(im_part)


@dataclass(frozen=True)
class ModuleParams:
    """Parameters of E_g(theta) = E_{d,c}(theta) and of the holomorphic structure nabla_z."""
    g: SL2Mat
    theta: Union[QuadIrr, Fraction]
    tau: Optional[ComplexPair] = None
    z: Optional[ComplexPair] = None
    _cache: Dict[str, sympy.Expr] = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.g.c <= 0:
            raise ParameterDomainError(f"basic modules need c > 0, got g={self.g}")
        if self.tau is not None and not Fraction(self.tau[1]) < 0:
            raise ParameterDomainError(f"complex structure needs Im(tau) < 0, got {self.tau}")

    @property
    def c(self) -> int:
        return self.g.c

    @property
    def d(self) -> int:
        return self.g.d

    def _quadratic(self, value: QuadraticNumber, key: str) -> sympy.Expr:
        if key not in self._cache:
            self._cache[key] = expand(value.to_sympy())
        return self._cache[key]

    @property
    def theta_value(self) -> QuadraticNumber:
        return QuadraticNumber.coerce(self.theta)

    @property
    def theta_expr(self) -> sympy.Expr:
        return self._quadratic(self.theta_value, 'theta')

    @property
    def rank(self) -> QuadraticNumber:
        """c theta + d."""
        return self.theta_value * self.c + self.d

    @property
    def translation(self) -> sympy.Expr:
        """(c theta + d) / c, the shift of the right U action."""
        return self._quadratic(self.rank / self.c, 'translation')

    @property
    def inverse_rank(self) -> sympy.Expr:
        """1 / (c theta + d), computed in Q(sqrt D) so no radical lands in a denominator."""
        return self._quadratic(1 / self.rank, 'inverse_rank')

    @property
    def left_theta_expr(self) -> sympy.Expr:
        value = morita_theta(self.g, self.theta)
        return expand(value.to_sympy() if isinstance(value, QuadIrr) else _rational(value))

    @property
    def tau_expr(self) -> sympy.Expr:
        if self.tau is None:
            raise ParameterDomainError("this operation needs a complex structure tau")
        return _complex(self.tau)

    @property
    def z_expr(self) -> sympy.Expr:
        return _complex(self.z) if self.z is not None else sympy.Integer(0)

    @property
    def rho(self) -> sympy.Expr:
        """d tau / (c theta + d)."""
        return expand(self.d * self.tau_expr * self.inverse_rank)

    def require_holomorphic(self):
        if self.rank.sign() <= 0:
            raise ParameterDomainError(f"holomorphic structures need c*theta + d > 0, got {self.rank!r}")


def _check_classes(f: GaussPolyPacket, p: ModuleParams):
    if f.c != p.c:
        raise ClassCountMismatch(f"packet has {f.c} classes, module E_g needs c={p.c}")


def _translate(term: PacketTerm, h) -> PacketTerm:
    """x -> x - h: poly(x - h) exp(kappa (x-h)^2 + beta (x-h) + gamma)."""
    return PacketTerm(
        poly_shift(term.poly, h),
        term.kappa,
        expand(term.beta - 2 * term.kappa * h),
        expand(term.gamma + term.kappa * h ** 2 - term.beta * h),
    )


def _shift_classes(f: GaussPolyPacket, step: int, h) -> GaussPolyPacket:
    """(Tf)(x, alpha) = f(x - h, alpha - step)."""
    c = f.c
    return GaussPolyPacket([[_translate(t, h) for t in f.classes[(alpha - step) % c]] for alpha in range(c)], require_decay=False)


def _modulate(f: GaussPolyPacket, slope, offset_per_class) -> GaussPolyPacket:
    """Multiply class alpha by exp(slope x + alpha * offset_per_class)."""
    return GaussPolyPacket([
        [PacketTerm(t.poly, t.kappa, expand(t.beta + slope), expand(t.gamma + alpha * offset_per_class)) for t in terms]
        for alpha, terms in enumerate(f.classes)
    ], require_decay=False)


def act_right_U(f: GaussPolyPacket, p: ModuleParams) -> GaussPolyPacket:
    """(fU)(x, alpha) = f(x - (c theta + d)/c, alpha - 1)."""
    _check_classes(f, p)
    return _shift_classes(f, 1, p.translation)


def act_right_U_inv(f: GaussPolyPacket, p: ModuleParams) -> GaussPolyPacket:
    _check_classes(f, p)
    return _shift_classes(f, -1, -p.translation)


def act_right_V(f: GaussPolyPacket, p: ModuleParams) -> GaussPolyPacket:
    """(fV)(x, alpha) = exp(2 pi i (x - alpha d / c)) f(x, alpha)."""
    _check_classes(f, p)
    return _modulate(f, TWO_PI_I, -TWO_PI_I * sympy.Rational(p.d, p.c))


def act_right_V_inv(f: GaussPolyPacket, p: ModuleParams) -> GaussPolyPacket:
    _check_classes(f, p)
    return _modulate(f, -TWO_PI_I, TWO_PI_I * sympy.Rational(p.d, p.c))


def act_left_U(f: GaussPolyPacket, p: ModuleParams) -> GaussPolyPacket:
    """(U'f)(x, alpha) = f(x - 1/c, alpha - a)."""
    _check_classes(f, p)
    return _shift_classes(f, p.g.a, sympy.Rational(1, p.c))


def act_left_V(f: GaussPolyPacket, p: ModuleParams) -> GaussPolyPacket:
    """(V'f)(x, alpha) = exp(2 pi i (x / (c theta + d) - alpha / c)) f(x, alpha)."""
    _check_classes(f, p)
    return _modulate(f, TWO_PI_I * p.inverse_rank, -TWO_PI_I * sympy.Rational(1, p.c))


_RIGHT_ACTIONS = {
    'U': act_right_U,
    'U*': act_right_U_inv,
    'V': act_right_V,
    'V*': act_right_V_inv,
}


def act_right_word(f: GaussPolyPacket, p: ModuleParams, word: Sequence[str]) -> GaussPolyPacket:
    """f . (w_1 w_2 ... w_k), applied letter by letter from the left."""
    for letter in word:
        if letter not in _RIGHT_ACTIONS:
            raise ParameterDomainError(f"unknown right-action letter {letter!r}")
        f = _RIGHT_ACTIONS[letter](f, p)
    return f


def act_right_monomial(f: GaussPolyPacket, p: ModuleParams, n: int, m: int) -> GaussPolyPacket:
    """f . U^n V^m."""
    word = (['U'] * n if n >= 0 else ['U*'] * -n) + (['V'] * m if m >= 0 else ['V*'] * -m)
    return act_right_word(f, p, word)


def phase_exponent(phase: UniScalar, theta_expr: sympy.Expr) -> sympy.Expr:
    """log of a unimodular monomial e^{2 pi i (a + b theta)} times +-1, modulo 2 pi i Z."""
    if not phase.is_unimodular_monomial():
        raise InvariantViolation(f"expected a single unimodular phase, got {phase!r}")
    ((a, b), q), = phase.terms.items()
    exponent = TWO_PI_I * (_rational(a) + _rational(b) * theta_expr)
    if q < 0:
        exponent += sympy.pi * sympy.I
    return expand(exponent)


def right_module_law_check(f: GaussPolyPacket, p: ModuleParams, word: Sequence[str]) -> bool:
    """Acting by the word letter by letter equals acting by its torus normal form."""
    rs = torus_rewrite_system(p.theta if isinstance(p.theta, QuadIrr) else Fraction(p.theta))
    indices = [rs.table.index(letter) for letter in word]
    reduced = rs.normal_form(FreeElement.word(tuple(indices)))
    if len(reduced.terms) != 1:
        raise InvariantViolation(f"normal form of {''.join(word)} is not a monomial")
    (normal_word, phase), = reduced.terms.items()
    direct = act_right_word(f, p, word)
    via_normal = act_right_word(f, p, [rs.table.names[i] for i in normal_word])
    via_normal = via_normal.phase_shift(phase_exponent(phase, p.theta_expr))
    return direct.equals(via_normal)


def right_relation_check(f: GaussPolyPacket, p: ModuleParams) -> bool:
    """(fU)V = e^{2 pi i theta} (fV)U."""
    lhs = act_right_V(act_right_U(f, p), p)
    rhs = act_right_U(act_right_V(f, p), p).phase_shift(TWO_PI_I * p.theta_expr)
    return lhs.equals(rhs)


def left_relation_check(f: GaussPolyPacket, p: ModuleParams) -> bool:
    """U'V' = e^{2 pi i g theta} V'U' as operators on packets."""
    lhs = act_left_U(act_left_V(f, p), p)
    rhs = act_left_V(act_left_U(f, p), p).phase_shift(TWO_PI_I * p.left_theta_expr)
    return lhs.equals(rhs)


def bimodule_commutation_check(f: GaussPolyPacket, p: ModuleParams) -> Dict[str, bool]:
    """Every left generator commutes with every right generator."""
    results = {}
    for left_name, left in (("U'", act_left_U), ("V'", act_left_V)):
        for right_name, right in (('U', act_right_U), ('V', act_right_V)):
            results[f"{left_name}{right_name}"] = left(right(f, p), p).equals(right(left(f, p), p))
    return results


def nabla_z(f: GaussPolyPacket, p: ModuleParams) -> GaussPolyPacket:
    """nabla_z f = df/dx + 2 pi i ((d tau / (c theta + d)) x + z) f, term by term."""
    _check_classes(f, p)
    rho, z = p.rho, p.z_expr

    def apply(alpha: int, t: PacketTerm) -> PacketTerm:
        slope = expand(2 * t.kappa + TWO_PI_I * rho)
        intercept = expand(t.beta + TWO_PI_I * z)
        poly = poly_add(poly_derivative(t.poly), poly_times_linear(t.poly, slope, intercept))
        return PacketTerm(poly, t.kappa, t.beta, t.gamma)

    return f.map_terms(apply, require_decay=False)


def _with_z(p: ModuleParams, z: Optional[ComplexPair]) -> ModuleParams:
    return ModuleParams(p.g, p.theta, p.tau, z)


def holomorphic_basis(p: ModuleParams) -> List[GaussPolyPacket]:
    """Kernel of nabla_z: exp(-pi i rho x^2 - 2 pi i z x) in each residue class.

    Raises:
        InvariantViolation: when the kernel Gaussian does not decay (d <= 0 for Im(tau) < 0)
    """
    p.require_holomorphic()
    kappa = expand(-sympy.pi * sympy.I * p.rho)
    beta = expand(-TWO_PI_I * p.z_expr)
    if real_sign(kappa) >= 0:
        raise InvariantViolation(
            f"holomorphic sections exp({kappa} x^2) do not decay for g={p.g}, tau={p.tau}",
            "Re(kappa) = pi d Im(tau) / (c theta + d) is negative only when d > 0")
    basis = [GaussPolyPacket.gaussian(p.c, alpha, kappa, beta) for alpha in range(p.c)]
    logger.info(f"holomorphic basis for g={p.g}: {len(basis)} sections, kappa={kappa}")
    return basis


def bases1_basis(p: ModuleParams) -> List[GaussPolyPacket]:
    """Alternate basis exp(-(c tau / (c theta + d)) x^2 / 2), one per class, without a decay requirement."""
    p.require_holomorphic()
    kappa = expand(-p.c * p.tau_expr * p.inverse_rank / 2)
    return [GaussPolyPacket.gaussian(p.c, alpha, kappa, 0, require_decay=False) for alpha in range(p.c)]


def bases1_defect(p: ModuleParams) -> List[Dict]:
    """nabla_0 applied to the alternate basis, with its decay flag."""
    p0 = _with_z(p, None)
    report = []
    for alpha, packet in enumerate(bases1_basis(p0)):
        defect = nabla_z(packet, p0)
        report.append({
            'class': alpha,
            'decays': packet.decays(),
            'annihilated': defect.is_zero(),
            'defect': defect.to_json(),
        })
    return report


def leibniz_defect(f: GaussPolyPacket, p: ModuleParams, n: int, m: int) -> GaussPolyPacket:
    """nabla_z(f U^n V^m) - nabla_z(f) U^n V^m - f delta_tau(U^n V^m)."""
    fw = act_right_monomial(f, p, n, m)
    delta_tau_factor = expand(TWO_PI_I * (n * p.tau_expr + m))
    return nabla_z(fw, p) - act_right_monomial(nabla_z(f, p), p, n, m) - fw.scale(delta_tau_factor)


def nabla_z_shift_check(f: GaussPolyPacket, p: ModuleParams) -> bool:
    """nabla_z f = nabla_0 f + 2 pi i z f."""
    p0 = _with_z(p, None)
    return nabla_z(f, p).equals(nabla_z(f, p0) + f.scale(TWO_PI_I * p.z_expr))


# one matrix per class count used by the randomized module checks
STANDARD_MATRICES = {
    1: SL2Mat(1, 0, 1, 1),
    2: SL2Mat(1, 1, 2, 3),
    3: SL2Mat(2, 1, 3, 2),
    5: SL2Mat(2, 1, 5, 3),
}


def random_word(rng: random.Random, length: int) -> List[str]:
    return [rng.choice(RIGHT_LETTERS) for _ in range(length)]
