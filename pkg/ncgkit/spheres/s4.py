"""
Noncommutative Four-Sphere
Presentation on a, a*, b, b*, x with deformation phase lambda = e^{2 pi i theta} and its 4x4 projector
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Union

from ..errors import ConfluenceError
from ..freealg import (
    AlgMatrix,
    FreeElement,
    GeneratorTable,
    RewriteSystem,
    UniScalar,
    chern_even,
    tensor_is_zero,
    theta_phase,
)
from ..nctorus.quadratic import QuadIrr

logger = logging.getLogger(__name__)

S4_GENERATORS = ('a', 'a*', 'b', 'b*', 'x')
A, AS, B, BS, X = range(5)


@dataclass
class S4Algebra:
    """Rewrite system of the four-sphere together with the defining relations it realizes."""
    theta: Union[Fraction, QuadIrr]
    table: GeneratorTable
    rewrite_system: RewriteSystem
    relations: Dict[str, FreeElement]

    @property
    def phase(self) -> UniScalar:
        return theta_phase(self.theta, 1)

    def relations_hold(self) -> Dict[str, bool]:
        return {label: self.rewrite_system.normal_form(rel).is_zero() for label, rel in self.relations.items()}


def _word(*letters: int) -> FreeElement:
    return FreeElement.word(letters)


def s4_algebra(theta: Union[Fraction, QuadIrr], check: bool = True) -> S4Algebra:
    """
    Build the S^4_theta rewrite system.

    Swaps come from ab = lambda ba, a*b = conj(lambda) ba* and their adjoints,
    the normality of a and b, and centrality of x; the sphere relation is used as
    x x -> 1 - a a* - b b*.

    Args:
        theta: Rational or quadratic-irrational deformation parameter (the latter stays formal)
        check: Run the critical-pair check and raise ConfluenceError on failure

    Returns:
        S4Algebra with the relation list used by the verification suite
    """
    table = GeneratorTable.build(S4_GENERATORS, pairs=[('a', 'a*'), ('b', 'b*')])
    lam = theta_phase(theta, 1)
    one = UniScalar.one()
    swaps = {
        (AS, A): one,
        (B, A): lam.star(),
        (B, AS): lam,
        (BS, A): lam,
        (BS, AS): lam.star(),
        (BS, B): one,
        (X, A): one,
        (X, AS): one,
        (X, B): one,
        (X, BS): one,
    }
    sphere = FreeElement.unit() - _word(A, AS) - _word(B, BS)
    rs = RewriteSystem(table, swaps, [((X, X), sphere)], name='S4')

    relations = {
        'a_normal': _word(AS, A) - _word(A, AS),
        'b_normal': _word(BS, B) - _word(B, BS),
        'ab_twist': _word(A, B) - _word(B, A) * lam,
        'a*b_twist': _word(AS, B) - _word(B, AS) * lam.star(),
        'sphere': _word(AS, A) + _word(B, BS) + _word(X, X) - FreeElement.unit(),
        'x_central_a': _word(X, A) - _word(A, X),
        'x_central_b': _word(X, B) - _word(B, X),
    }
    algebra = S4Algebra(theta, table, rs, relations)
    if check:
        unresolved = rs.check_local_confluence()
        if unresolved:
            raise ConfluenceError(
                f"S4 rewrite system has {len(unresolved)} unresolved critical pairs",
                unresolved[0].describe(table),
            )
        logger.info(f"S4 rewrite system at theta={theta} is locally confluent")
    return algebra


def s4_projector(algebra: S4Algebra, scale: Fraction = Fraction(1, 2)) -> AlgMatrix:
    """scale * [[1+x, 0, a, b], [0, 1+x, -lambda b*, a*], [a*, -conj(lambda) b, 1-x, 0], [b*, a, 0, 1-x]]."""
    lam = algebra.phase
    one = FreeElement.unit()
    zero = FreeElement.zero()
    a, a_star, b, b_star, x = (FreeElement.gen(k) for k in range(5))
    rows = [
        [one + x, zero, a, b],
        [zero, one + x, -(b_star * lam), a_star],
        [a_star, -(b * lam.star()), one - x, zero],
        [b_star, a, zero, one - x],
    ]
    return AlgMatrix(rows, algebra.table).scale(scale)


def verify_s4_projector(algebra: S4Algebra, e: AlgMatrix) -> Dict[str, bool]:
    """Idempotency, self-adjointness and vanishing of ch_0 and ch_1, all exact."""
    rs = algebra.rewrite_system
    report = {
        'idempotent': e.matmul(e, rs).equals(e, rs),
        'selfadjoint': e.adjoint().equals(e, rs),
        'ch0_zero': tensor_is_zero(chern_even(e, 0), rs),
        'ch1_zero': tensor_is_zero(chern_even(e, 1), rs),
    }
    logger.info(f"S4 projector checks at theta={algebra.theta}: {report}")
    return report


def swap_phases(algebra: S4Algebra) -> List[UniScalar]:
    """Phases of the swap rules, in rule order."""
    rules = algebra.rewrite_system.rules
    return [rule.rhs.terms[(rule.lhs[1], rule.lhs[0])] for rule in rules if rule.label.startswith('swap')]
