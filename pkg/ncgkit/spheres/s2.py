"""
Two-Sphere Projector
Commutative *-algebra on Hermitian x, y, z with x^2 + y^2 + z^2 = 1 and the Bott projector
"""

import itertools
import logging
from fractions import Fraction
from typing import Dict, NamedTuple

from ..freealg import AlgMatrix, FreeElement, GeneratorTable, RewriteSystem, TensorElement, UniScalar, chern_even

logger = logging.getLogger(__name__)


class ProjectorModel(NamedTuple):
    matrix: AlgMatrix
    rewrite_system: RewriteSystem


def s2_rewrite_system() -> RewriteSystem:
    """Commutation swaps for x < y < z and the reducer zz -> 1 - xx - yy."""
    table = GeneratorTable.build(['x', 'y', 'z'])
    x, y, z = range(3)
    one = UniScalar.one()
    swaps = {(y, x): one, (z, x): one, (z, y): one}
    sphere = FreeElement.unit() - FreeElement.word((x, x)) - FreeElement.word((y, y))
    return RewriteSystem(table, swaps, [((z, z), sphere)], name='S2')


def s2_projector() -> ProjectorModel:
    """e = 1/2 [[1 + z, x - iy], [x + iy, 1 - z]]."""
    rs = s2_rewrite_system()
    x, y, z = (FreeElement.gen(k) for k in range(3))
    i = UniScalar.i()
    one = FreeElement.unit()
    rows = [
        [one + z, x - y * i],
        [x + y * i, one - z],
    ]
    e = AlgMatrix(rows, rs.table).scale(Fraction(1, 2))
    return ProjectorModel(e, rs)


def s2_volume_form() -> TensorElement:
    """(i/4) sum over permutations of x, y, z of sign * x_a (x) x_b (x) x_c."""
    coefficient = UniScalar.i() * Fraction(1, 4)
    pieces = []
    for perm in itertools.permutations(range(3)):
        inversions = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
        sign = -1 if inversions % 2 else 1
        pieces.append((tuple((k,) for k in perm), coefficient * sign))
    return TensorElement(3, pieces)


def verify_projector(model: ProjectorModel) -> Dict[str, bool]:
    """e^2 = e, e* = e and ch_0(e) = 0 under the rewrite system."""
    e, rs = model
    return {
        'idempotent': e.matmul(e, rs).equals(e, rs),
        'selfadjoint': e.adjoint().equals(e, rs),
        'ch0_zero': chern_even(e, 0).normalized(rs).is_zero(),
    }


def s2_ch1_check(model: ProjectorModel) -> bool:
    """ch_1(e) equals the antisymmetrized volume form."""
    e, rs = model
    return chern_even(e, 1).normalized(rs) == s2_volume_form()
