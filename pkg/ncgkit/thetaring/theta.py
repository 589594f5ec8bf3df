"""
Theta Constants
Certified evaluation of sum_n exp(pi i l (n + r)^2 tau) with an explicit truncation tail bound

For |q| = exp(-pi l Im(tau)) < 1 and r reduced into (-1/2, 1/2], every index |n| > M
satisfies |n + r| >= M + 1 - |r| =: a >= 1/2, so the two tails together are bounded by

    2 |q|^(a^2) / (1 - |q|)

because (a + k)^2 >= a^2 + k for k >= 0. M is the smallest integer >= |r| + 1 whose
bound stays under the tail share of the error budget; it is found by doubling and bisection.
"""

import math
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Tuple, Union

import mpmath

from ..errors import DivergentNomeError, ParameterDomainError
from ..utils.precision_budget import PrecisionBudget

logger = logging.getLogger(__name__)

ComplexLike = Union[complex, mpmath.mpc, Tuple[Fraction, Fraction]]


def reduce_characteristic(r) -> Fraction:
    """Representative of r + Z in (-1/2, 1/2]."""
    r = Fraction(r)
    return r - math.ceil(r - Fraction(1, 2))


@dataclass(frozen=True)
class ThetaChar:
    """Rational characteristic r (stored reduced, so r and r + 1 compare equal) and scale l > 0."""
    r: Fraction
    l: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, 'r', reduce_characteristic(self.r))
        object.__setattr__(self, 'l', Fraction(self.l))
        if self.l <= 0:
            raise ParameterDomainError(f"theta scale l must be positive, got {self.l}")


@dataclass(frozen=True)
class ThetaValue:
    """Value with a certified absolute error bound."""
    value: mpmath.mpc
    err: mpmath.mpf
    radius: int
    bits: int

    def format(self, eps: float) -> str:
        digits = max(1, int(round(-math.log10(eps)))) + 4
        re_part = mpmath.nstr(self.value.real, digits)
        if abs(self.value.imag) > eps:
            sign = '+' if self.value.imag >= 0 else '-'
            return f"{re_part} {sign} {mpmath.nstr(abs(self.value.imag), digits)}i ± {eps:g}"
        return f"{re_part} ± {eps:g}"


def _as_mpc(tau: ComplexLike) -> mpmath.mpc:
    if isinstance(tau, tuple):
        re_part, im_part = (Fraction(x) for x in tau)
        return mpmath.mpc(mpmath.mpf(re_part.numerator) / re_part.denominator,
                          mpmath.mpf(im_part.numerator) / im_part.denominator)
    return mpmath.mpc(tau)


def tail_bound(q_abs: mpmath.mpf, r: Fraction, radius: int) -> mpmath.mpf:
    a = mpmath.mpf(radius + 1) - abs(mpmath.mpf(r.numerator) / r.denominator)
    return 2 * q_abs ** (a * a) / (1 - q_abs)


def truncation_radius(q_abs: mpmath.mpf, r: Fraction, budget: float) -> int:
    """Smallest M >= |r| + 1 with tail_bound(M) < budget."""
    low = max(1, math.ceil(abs(r) + 1))
    if tail_bound(q_abs, r, low) < budget:
        return low
    high = low * 2
    while tail_bound(q_abs, r, high) >= budget:
        low, high = high, high * 2
    while high - low > 1:
        middle = (low + high) // 2
        if tail_bound(q_abs, r, middle) < budget:
            high = middle
        else:
            low = middle
    return high


def theta_const(ch: ThetaChar, tau_eff: ComplexLike, eps: float = 1e-12, bits: int = 0) -> ThetaValue:
    """
    Evaluate sum_{n in Z} exp(pi i l (n + r)^2 tau_eff) to absolute error eps.

    Args:
        ch: Characteristic r and scale l
        tau_eff: Effective argument; the nome exp(pi i l tau_eff) must have modulus < 1
        eps: Target absolute error
        bits: Minimum working precision (0 picks it from eps)

    Returns:
        ThetaValue with err <= eps

    Raises:
        DivergentNomeError: when |q| >= 1
    """
    return _theta_series(ch.r, ch.l, tau_eff, eps, bits)


def _theta_series(r: Fraction, l: Fraction, tau_eff: ComplexLike, eps: float, bits: int = 0) -> ThetaValue:
    # r is taken as given, not reduced; the radius widens with |r|
    if l <= 0:
        raise ParameterDomainError(f"theta scale l must be positive, got {l}")
    budget = PrecisionBudget().split(eps, minimum_bits=max(bits, 53))
    with mpmath.workprec(budget.bits):
        tau = _as_mpc(tau_eff)
        l_mp = mpmath.mpf(l.numerator) / l.denominator
        q_abs = mpmath.exp(-mpmath.pi * l_mp * tau.imag)
        if q_abs >= 1:
            raise DivergentNomeError("divergent nome", f"|q| = {mpmath.nstr(q_abs, 8)} for l={l}, tau_eff={tau}")
        radius = truncation_radius(q_abs, r, budget.tail)
        r_mp = mpmath.mpf(r.numerator) / r.denominator
        factor = mpmath.pi * 1j * l_mp * tau
        total = mpmath.mpc(0)
        for n in range(-radius, radius + 1):
            shifted = n + r_mp
            total += mpmath.exp(factor * shifted * shifted)
        tail = tail_bound(q_abs, r, radius)
        rounding = (2 * radius + 1) * mpmath.ldexp(1, -budget.bits + 4)
        err = tail + rounding
    logger.debug(f"theta series r={r} l={l}: M={radius}, bits={budget.bits}, err={mpmath.nstr(err, 3)}")
    return ThetaValue(total, err, radius, budget.bits)


def theta_symmetry_check(ch: ThetaChar, tau_eff: ComplexLike, eps: float = 1e-12) -> Dict[str, object]:
    """
    Compare theta_r with theta_{r+1} and theta_{-r}; both differences should stay within 2 eps.

    The shifted and reflected sides are summed with the unreduced characteristic, so the
    comparison runs over a genuinely different index window.
    """
    base = theta_const(ch, tau_eff, eps)
    shifted = _theta_series(ch.r + 1, ch.l, tau_eff, eps)
    reflected = _theta_series(-ch.r, ch.l, tau_eff, eps)
    shift_defect = abs(base.value - shifted.value)
    reflect_defect = abs(base.value - reflected.value)
    return {
        'shift_defect': shift_defect,
        'reflect_defect': reflect_defect,
        'shift_radius': shifted.radius,
        'ok': bool(shift_defect <= 2 * eps and reflect_defect <= 2 * eps),
    }
