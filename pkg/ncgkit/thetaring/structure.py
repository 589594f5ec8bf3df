"""
Structure Constants
Index sets from the congruence system and theta-constant structure constants C^gamma_{alpha, beta}
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

import mpmath
from sympy.ntheory.modular import solve_congruence

from ..errors import DegreeError, ParameterDomainError
from ..nctorus.quadratic import QuadIrr, QuadraticNumber
from ..nctorus.sl2 import SL2Mat
from .theta import ThetaChar, theta_const

logger = logging.getLogger(__name__)

Entry = Tuple[mpmath.mpc, mpmath.mpf]


@dataclass(frozen=True)
class CongruenceClass:
    """n = residue mod modulus; residue in [0, modulus)."""
    residue: int
    modulus: int


def index_congruence(g1: SL2Mat, g2: SL2Mat, alpha: int, beta: int, gamma: int) -> Optional[CongruenceClass]:
    """Combine n = -c1 gamma + c12 alpha (mod c12 c1) and n = c2 d12 gamma - c12 d2 beta (mod c12 c2).

    Returns None when the two congruences are inconsistent.
    """
    g12 = g1 @ g2
    c1, c2, c12 = g1.c, g2.c, g12.c
    if c1 <= 0 or c2 <= 0 or c12 <= 0:
        raise DegreeError(f"index sets need positive degrees, got {c1}, {c2}, {c12}")
    first = (-c1 * gamma + c12 * alpha, c12 * c1)
    second = (c2 * g12.d * gamma - c12 * g2.d * beta, c12 * c2)
    solution = solve_congruence(first, second)
    if solution is None:
        return None
    residue, modulus = solution
    return CongruenceClass(int(residue) % int(modulus), int(modulus))


def index_set(g1: SL2Mat, g2: SL2Mat, alpha: int, beta: int, gamma: int, window: int) -> List[int]:
    """All n in [-window, window] satisfying both congruences."""
    cls = index_congruence(g1, g2, alpha, beta, gamma)
    if cls is None:
        return []
    start = -window + ((cls.residue + window) % cls.modulus)
    return list(range(start, window + 1, cls.modulus))


def _require_positive_rank(g: SL2Mat, theta) -> None:
    if theta is None:
        return
    rank = QuadraticNumber.coerce(theta) * g.c + g.d
    if rank.sign() <= 0:
        raise ParameterDomainError(f"c*theta + d must be positive for g={g}, got {rank!r}")


@dataclass
class StructTensor:
    """C[gamma][alpha][beta] with 1-based indices, plus a certified error per entry."""
    dims: Tuple[int, int, int]
    entries: Dict[Tuple[int, int, int], Entry]

    @property
    def c12(self) -> int:
        return self.dims[0]

    @property
    def c1(self) -> int:
        return self.dims[1]

    @property
    def c2(self) -> int:
        return self.dims[2]

    def value(self, gamma: int, alpha: int, beta: int) -> mpmath.mpc:
        return self.entries[(gamma, alpha, beta)][0]

    def error(self, gamma: int, alpha: int, beta: int) -> mpmath.mpf:
        return self.entries[(gamma, alpha, beta)][1]

    def max_error(self) -> mpmath.mpf:
        return max((err for _, err in self.entries.values()), default=mpmath.mpf(0))

    def rows(self) -> List[Tuple[int, int, int, mpmath.mpc, mpmath.mpf]]:
        """Entries ordered by (gamma, alpha, beta)."""
        return [(g, a, b) + self.entries[(g, a, b)] for g, a, b in sorted(self.entries)]


def struct_constants(
    g1: SL2Mat,
    g2: SL2Mat,
    theta: Optional[Union[QuadIrr, Fraction]],
    tau: Tuple[Fraction, Fraction],
    eps: float = 1e-12,
    bits: int = 0,
) -> StructTensor:
    """
    C^gamma_{alpha, beta} = sum_{m in I} exp(-pi i tau m^2 / (2 c1 c2 c12)).

    A consistent index class m = n0 (mod L) turns the sum into a theta constant with
    characteristic n0 / L, scale L^2 / (2 c1 c2 c12) and effective argument -tau.

    Args:
        g1, g2: Matrices of positive degree
        theta: When given, c theta + d > 0 is enforced for g1, g2 and g1 g2
        tau: (Re, Im) with Im < 0
        eps: Certified absolute error per entry

    Returns:
        StructTensor with dims (c12, c1, c2)
    """
    g12 = g1 @ g2
    c1, c2, c12 = g1.c, g2.c, g12.c
    if c1 <= 0 or c2 <= 0 or c12 <= 0:
        raise DegreeError(f"structure constants need positive degrees, got deg g1={c1}, deg g2={c2}, deg g1g2={c12}")
    re_tau, im_tau = Fraction(tau[0]), Fraction(tau[1])
    if not im_tau < 0:
        raise ParameterDomainError(f"Im(tau) must be negative, got {im_tau}")
    for g in (g1, g2, g12):
        _require_positive_rank(g, theta)

    tau_eff = (-re_tau, -im_tau)
    denominator = 2 * c1 * c2 * c12
    entries: Dict[Tuple[int, int, int], Entry] = {}
    empty = 0
    for gamma in range(1, c12 + 1):
        for alpha in range(1, c1 + 1):
            for beta in range(1, c2 + 1):
                cls = index_congruence(g1, g2, alpha, beta, gamma)
                if cls is None:
                    entries[(gamma, alpha, beta)] = (mpmath.mpc(0), mpmath.mpf(0))
                    empty += 1
                    continue
                ch = ThetaChar(Fraction(cls.residue, cls.modulus), Fraction(cls.modulus ** 2, denominator))
                result = theta_const(ch, tau_eff, eps, bits)
                entries[(gamma, alpha, beta)] = (result.value, result.err)
    logger.info(f"struct_constants g1={g1}, g2={g2}: dims ({c12}, {c1}, {c2}), {empty} empty index sets")
    return StructTensor((c12, c1, c2), entries)


def struct_constant_by_window(g1: SL2Mat, g2: SL2Mat, tau: Tuple[Fraction, Fraction], alpha: int, beta: int, gamma: int,
                              window: int, bits: int = 128) -> mpmath.mpc:
    """Direct summation of the defining series over the index set inside [-window, window]."""
    c1, c2, c12 = g1.c, g2.c, (g1 @ g2).c
    with mpmath.workprec(bits):
        t = mpmath.mpc(mpmath.mpf(Fraction(tau[0]).numerator) / Fraction(tau[0]).denominator,
                       mpmath.mpf(Fraction(tau[1]).numerator) / Fraction(tau[1]).denominator)
        scale = -mpmath.pi * 1j * t / (2 * c1 * c2 * c12)
        total = mpmath.mpc(0)
        for m in index_set(g1, g2, alpha, beta, gamma, window):
            total += mpmath.exp(scale * m * m)
        return +total


def struct_rows_for_csv(tensor: StructTensor, digits: int = 20) -> List[List[str]]:
    """Rows gamma, alpha, beta, re, im, err as strings, in index order."""
    rows = []
    for gamma, alpha, beta, value, err in tensor.rows():
        rows.append([
            str(gamma),
            str(alpha),
            str(beta),
            mpmath.nstr(value.real, digits),
            mpmath.nstr(value.imag, digits),
            mpmath.nstr(err, 3),
        ])
    return rows
