"""
Morita Action and Real Multiplication
Fractional-linear SL(2, Z) action on theta, fixing matrices and tensor degree bookkeeping
"""

import logging
from fractions import Fraction
from typing import List, NamedTuple, Tuple, Union

from ..errors import PoleError
from .quadratic import QuadIrr, QuadraticNumber
from .sl2 import SL2Mat

logger = logging.getLogger(__name__)

IntMatrix = Tuple[Tuple[int, int], Tuple[int, int]]


def morita_theta(g: SL2Mat, theta: Union[QuadIrr, Fraction, int]) -> Union[QuadIrr, Fraction]:
    """g theta = (a theta + b) / (c theta + d), exact.

    Raises:
        PoleError: when c theta + d = 0
    """
    if isinstance(theta, QuadIrr):
        denominator = theta.value * g.c + g.d
        if denominator.is_zero():
            raise PoleError(f"c*theta + d = 0 for g={g}, theta={theta}")
        return QuadIrr.from_value((theta.value * g.a + g.b) / denominator)
    theta = Fraction(theta)
    denominator = g.c * theta + g.d
    if denominator == 0:
        raise PoleError(f"c*theta + d = 0 for g={g}, theta={theta}")
    return (g.a * theta + g.b) / denominator


def is_fixed(g: SL2Mat, theta: Union[QuadIrr, Fraction]) -> bool:
    """g theta = theta, checked as c theta^2 + (d - a) theta - b = 0."""
    t = QuadraticNumber.coerce(theta)
    return (t * t * g.c + t * (g.d - g.a) - g.b).is_zero()


def is_rm(theta: QuadIrr) -> bool:
    """Quadratic irrationalities are exactly the thetas with real multiplication."""
    return isinstance(theta, QuadIrr)


def fixing_matrices(theta: QuadIrr, bound: int) -> List[SL2Mat]:
    """All g in SL(2, Z) with entries bounded by bound in absolute value and g theta = theta.

    The identity is always part of the answer, including for bound 0.
    """
    found = [SL2Mat.identity()]
    span = range(-bound, bound + 1)
    for a in span:
        for b in span:
            for c in span:
                for d in span:
                    if a * d - b * c != 1 or (a, b, c, d) == (1, 0, 0, 1):
                        continue
                    g = SL2Mat(a, b, c, d)
                    if is_fixed(g, theta):
                        found.append(g)
    logger.info(f"fixing_matrices(theta={theta}, bound={bound}): {len(found)} matrices")
    return found


class DegreeReport(NamedTuple):
    deg1: int
    deg2: int
    deg12: int
    positive: bool
    violation: bool


def tensor_degree_check(g1: SL2Mat, g2: SL2Mat) -> DegreeReport:
    """Degrees of g1, g2 and g1 g2; positive degrees of both factors should give a positive product degree."""
    product = g1 @ g2
    positive = g1.degree > 0 and g2.degree > 0
    violation = positive and product.degree <= 0
    if violation:
        logger.warning(f"degree positivity violated: deg({g1})={g1.degree}, deg({g2})={g2.degree}, deg(g1g2)={product.degree}")
    return DegreeReport(g1.degree, g2.degree, product.degree, positive, violation)


def canonicalize_theta(theta: QuadIrr) -> Tuple[QuadIrr, List[IntMatrix]]:
    """Move theta into [0, 1/2] with theta -> theta + k and theta -> -theta.

    Returns the canonical value and the GL(2, Z) moves applied, in order.
    """
    moves: List[IntMatrix] = []
    value = theta.value
    shift = -value.floor()
    if shift:
        value = value + shift
        moves.append(((1, shift), (0, 1)))
    if value > Fraction(1, 2):
        value = 1 - value
        moves.append(((-1, 1), (0, 1)))
    return QuadIrr.from_value(value), moves
