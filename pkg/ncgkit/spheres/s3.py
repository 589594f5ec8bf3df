"""
Three-Sphere Presentations
Relations of the deformed four-plane and three-sphere, the Pauli-basis unitary U and its odd Chern characters
"""

import itertools
import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..errors import DegreeError, DimensionMismatch, InvariantViolation
from ..freealg import (
    AlgMatrix,
    FreeElement,
    GeneratorTable,
    RewriteSystem,
    TensorElement,
    UniScalar,
    chern_odd,
)

logger = logging.getLogger(__name__)

Z_NAMES = ('z0', 'z1', 'z2', 'z3', 'z0*', 'z1*', 'z2*', 'z3*')
X_NAMES = ('x0', 'x1', 'x2', 'x3')
CYCLIC = ((1, 2, 3), (2, 3, 1), (3, 1, 2))

ScalarGrid = List[List[UniScalar]]


def z_table() -> GeneratorTable:
    """z0..z3 smaller than z0*..z3*."""
    return GeneratorTable.build(Z_NAMES, pairs=[(f"z{mu}", f"z{mu}*") for mu in range(4)])


def x_table() -> GeneratorTable:
    return GeneratorTable.build(X_NAMES)


def z(mu: int) -> FreeElement:
    return FreeElement.gen(mu)


def z_star(mu: int) -> FreeElement:
    return FreeElement.gen(4 + mu)


def cos_pi(t: Fraction) -> UniScalar:
    """cos(pi t) as a cyclotomic scalar."""
    return UniScalar.phase(t / 2, coefficient=Fraction(1, 2)) + UniScalar.phase(-t / 2, coefficient=Fraction(1, 2))


def i_sin_pi(t: Fraction) -> UniScalar:
    """i sin(pi t) as a cyclotomic scalar."""
    return UniScalar.phase(t / 2, coefficient=Fraction(1, 2)) - UniScalar.phase(-t / 2, coefficient=Fraction(1, 2))


@dataclass(frozen=True)
class PhiParams:
    """Angles phi_1, phi_2, phi_3 in turns, reduced into [0, 1)."""
    phi: Tuple[Fraction, Fraction, Fraction]

    def __post_init__(self):
        if len(self.phi) != 3:
            raise DimensionMismatch(f"phi needs three components, got {len(self.phi)}")
        object.__setattr__(self, 'phi', tuple(Fraction(p) % 1 for p in self.phi))

    def __getitem__(self, k: int) -> Fraction:
        """phi_k for k = 1, 2, 3."""
        return self.phi[k - 1]

    def as_floats(self) -> Tuple[float, float, float]:
        return tuple(float(p) for p in self.phi)

    @classmethod
    def random(cls, rng: random.Random, denominator: int = 12) -> 'PhiParams':
        return cls(tuple(Fraction(rng.randrange(denominator), denominator) for _ in range(3)))


class LambdaMat:
    """4x4 matrix of exact scalars with Lambda Lambda* = 1, and Lambda = Lambda^T unless relaxed."""

    def __init__(self, entries: Sequence[Sequence], require_symmetric: bool = True):
        if len(entries) != 4 or any(len(row) != 4 for row in entries):
            raise DimensionMismatch("Lambda must be 4x4")
        self.entries: ScalarGrid = [[UniScalar.coerce(v) for v in row] for row in entries]
        if not self.is_unitary():
            raise InvariantViolation("Lambda is not unitary")
        if require_symmetric and not self.is_symmetric():
            raise InvariantViolation("Lambda is not symmetric")

    def __getitem__(self, index: Tuple[int, int]) -> UniScalar:
        mu, nu = index
        return self.entries[mu][nu]

    def is_unitary(self) -> bool:
        for i in range(4):
            for j in range(4):
                total = UniScalar.zero()
                for k in range(4):
                    total = total + self.entries[i][k] * self.entries[j][k].star()
                if not (total - (1 if i == j else 0)).is_zero():
                    return False
        return True

    def is_symmetric(self) -> bool:
        return all((self.entries[i][j] - self.entries[j][i]).is_zero() for i in range(4) for j in range(i + 1, 4))

    def to_numpy(self) -> np.ndarray:
        return np.array([[complex(v.to_complex(bits=53)) for v in row] for row in self.entries])

    @classmethod
    def identity(cls) -> 'LambdaMat':
        return cls([[1 if i == j else 0 for j in range(4)] for i in range(4)])

    @classmethod
    def from_phi(cls, phi: PhiParams) -> 'LambdaMat':
        """diag(1, e^{-2 pi i phi_1}, e^{-2 pi i phi_2}, e^{-2 pi i phi_3})."""
        diagonal = [UniScalar.one()] + [UniScalar.phase(-phi[k]) for k in (1, 2, 3)]
        return cls([[diagonal[i] if i == j else 0 for j in range(4)] for i in range(4)])

    @classmethod
    def monomial(cls, permutation: Sequence[int], phases: Sequence[Fraction], require_symmetric: bool = True) -> 'LambdaMat':
        """Lambda[i][permutation[i]] = e^{2 pi i phases[i]}, zero elsewhere."""
        rows = [[0] * 4 for _ in range(4)]
        for i, (j, a) in enumerate(zip(permutation, phases)):
            rows[i][j] = UniScalar.phase(a)
        return cls(rows, require_symmetric=require_symmetric)

    @classmethod
    def random_symmetric(cls, rng: random.Random, denominator: int = 12) -> 'LambdaMat':
        """Diagonal phases, or an involution with equal phases on each swapped pair."""
        phases = [Fraction(rng.randrange(denominator), denominator) for _ in range(4)]
        if rng.random() < 0.5:
            return cls.monomial(range(4), phases)
        first, second = rng.sample(range(4), 2)
        permutation = list(range(4))
        permutation[first], permutation[second] = second, first
        phases[second] = phases[first]
        return cls.monomial(permutation, phases)

    @classmethod
    def random_nonsymmetric(cls, rng: random.Random, denominator: int = 12) -> 'LambdaMat':
        """Phases times a 3- or 4-cycle; never symmetric since the support is not transpose-invariant."""
        phases = [Fraction(rng.randrange(denominator), denominator) for _ in range(4)]
        points = list(range(4))
        rng.shuffle(points)
        cycle = points[:rng.choice([3, 4])]
        permutation = list(range(4))
        for position, point in enumerate(cycle):
            permutation[point] = cycle[(position + 1) % len(cycle)]
        return cls.monomial(permutation, phases, require_symmetric=False)


class PauliBasis:
    """tau_0 = 1, tau_k = i sigma_k, orthonormal for <a, b> = 1/2 Tr(a* b)."""

    @staticmethod
    def sigma(k: int) -> ScalarGrid:
        i = UniScalar.i()
        zero, one = UniScalar.zero(), UniScalar.one()
        if k == 1:
            return [[zero, one], [one, zero]]
        if k == 2:
            return [[zero, -i], [i, zero]]
        if k == 3:
            return [[one, zero], [zero, -one]]
        raise DimensionMismatch(f"Pauli index must be 1, 2 or 3, got {k}")

    @classmethod
    def tau(cls, mu: int) -> ScalarGrid:
        if mu == 0:
            return [[UniScalar.one(), UniScalar.zero()], [UniScalar.zero(), UniScalar.one()]]
        return [[entry * UniScalar.i() for entry in row] for row in cls.sigma(mu)]

    @classmethod
    def basis(cls) -> List[ScalarGrid]:
        return [cls.tau(mu) for mu in range(4)]

    @staticmethod
    def inner(a: ScalarGrid, b: ScalarGrid) -> UniScalar:
        total = UniScalar.zero()
        for i in range(2):
            for j in range(2):
                total = total + a[j][i].star() * b[j][i]
        return total * Fraction(1, 2)

    @classmethod
    def is_orthonormal(cls) -> bool:
        taus = cls.basis()
        return all((cls.inner(taus[m], taus[n]) - (1 if m == n else 0)).is_zero() for m in range(4) for n in range(4))


@dataclass
class QuadraticRelationSet:
    """Homogeneous degree-2 relations with labels; the sphere element is kept apart."""
    table: GeneratorTable
    labels: List[str]
    relations: List[FreeElement]
    rewrite_system: Optional[RewriteSystem] = None
    sphere: Optional[FreeElement] = field(default=None)

    def __post_init__(self):
        for label, rel in zip(self.labels, self.relations):
            if not rel.degrees() <= {2}:
                raise DegreeError(f"relation {label} is not homogeneous of degree 2")

    def __len__(self) -> int:
        return len(self.relations)

    def by_label(self, label: str) -> FreeElement:
        return self.relations[self.labels.index(label)]


def r4_rewrite_system(lam: LambdaMat) -> RewriteSystem:
    """z^{mu*} -> sum_nu Lambda[mu][nu] z^nu."""
    table = z_table()
    substitutions = []
    for mu in range(4):
        image = FreeElement([((nu,), lam[mu, nu]) for nu in range(4)])
        substitutions.append(((4 + mu,), image))
    return RewriteSystem(table, substitutions=substitutions, name='R4_Lambda')


def _left_unitarity(k: int, l: int, m: int, sign: int) -> FreeElement:
    # z^k z^{0*} - z^0 z^{k*} + sign (z^l z^{m*} - z^m z^{l*})
    return (z(k) * z_star(0) - z(0) * z_star(k)
            + (z(l) * z_star(m) - z(m) * z_star(l)) * sign)


def _right_unitarity(k: int, l: int, m: int, sign: int) -> FreeElement:
    # z^{0*} z^k - z^{k*} z^0 + sign (z^{l*} z^m - z^{m*} z^l)
    return (z_star(0) * z(k) - z_star(k) * z(0)
            + (z_star(l) * z(m) - z_star(m) * z(l)) * sign)


def r4_relations(lam: LambdaMat, epsilon_sign: int = 1, fold: bool = True) -> QuadraticRelationSet:
    """
    The six quadratic relations of the deformed four-plane.

    Args:
        lam: Unitary symmetric Lambda
        epsilon_sign: +1 matches the Pauli basis tau_k = i sigma_k; -1 flips the epsilon terms
        fold: Normalize by z^{mu*} = Lambda z so the relations live in z0..z3 only

    Returns:
        QuadraticRelationSet labelled left-unitarity[k] and right-unitarity[k]
    """
    if epsilon_sign not in (1, -1):
        raise InvariantViolation(f"epsilon_sign must be +1 or -1, got {epsilon_sign}")
    rs = r4_rewrite_system(lam)
    labels, relations = [], []
    for k, l, m in CYCLIC:
        labels.append(f"left-unitarity[{k}]")
        relations.append(_left_unitarity(k, l, m, epsilon_sign))
    for k, l, m in CYCLIC:
        labels.append(f"right-unitarity[{k}]")
        relations.append(_right_unitarity(k, l, m, epsilon_sign))
    if fold:
        relations = [rs.normal_form(rel) for rel in relations]
    return QuadraticRelationSet(rs.table, labels, relations, rs)


def s3_relations(lam: LambdaMat, epsilon_sign: int = 1, fold: bool = True) -> QuadraticRelationSet:
    """Four-plane relations plus the sphere element sum_mu z^mu z^{mu*} - 1."""
    relations = r4_relations(lam, epsilon_sign, fold)
    sphere = sum((z(mu) * z_star(mu) for mu in range(4)), FreeElement.zero()) - FreeElement.unit()
    relations.sphere = relations.rewrite_system.normal_form(sphere) if fold else sphere
    return relations


def unitary_matrix(lam: LambdaMat, scale=1) -> AlgMatrix:
    """U = sum_mu tau_mu (scale z^mu) over the z table."""
    scale = UniScalar.coerce(scale)
    if scale.is_zero():
        raise InvariantViolation("U must be built from a nonzero multiple of the generators")
    entries = [z(mu) * scale for mu in range(4)]
    return AlgMatrix.from_scalar_expansion(PauliBasis.basis(), entries, z_table())


def _sigma_component(matrix: AlgMatrix, k: int) -> FreeElement:
    """1/2 Tr(sigma_k M)."""
    sigma = PauliBasis.sigma(k)
    total = FreeElement.zero()
    for i in range(2):
        for j in range(2):
            total = total + matrix[i, j] * sigma[j][i]
    return total * Fraction(1, 2)


def unitarity_expansion(lam: LambdaMat, fold: bool = False) -> Tuple[List[FreeElement], List[FreeElement]]:
    """sigma_k components of U U* and U* U, the parts that must vanish for both to be central scalars."""
    u = unitary_matrix(lam)
    rs = r4_rewrite_system(lam) if fold else None
    uu = u.matmul(u.adjoint(), rs)
    u_u = u.adjoint().matmul(u, rs)
    return [_sigma_component(uu, k) for k in (1, 2, 3)], [_sigma_component(u_u, k) for k in (1, 2, 3)]


def ch12_tensor(lam: LambdaMat) -> TensorElement:
    """ch_{1/2}(U) reduced by the star relations."""
    return chern_odd(unitary_matrix(lam), 0).normalized(r4_rewrite_system(lam))


def ch12_closed_form(lam: LambdaMat) -> TensorElement:
    """2 sum Lambda[mu][nu] (z^mu (x) z^nu - z^nu (x) z^mu)."""
    pieces = []
    for mu in range(4):
        for nu in range(4):
            coefficient = lam[mu, nu] * 2
            pieces.append((((mu,), (nu,)), coefficient))
            pieces.append((((nu,), (mu,)), -coefficient))
    return TensorElement(2, pieces)


def ch32_tensor(lam: LambdaMat, scale=1) -> TensorElement:
    """ch_{3/2}(U) in the free algebra, before any relation is applied."""
    return chern_odd(unitary_matrix(lam, scale), 1)


def antisymmetrize(t: TensorElement) -> TensorElement:
    """sum over slot permutations pi of sign(pi) times t with slots permuted."""
    pieces = []
    for perm in itertools.permutations(range(t.arity)):
        inversions = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
        sign = -1 if inversions % 2 else 1
        for slots, coefficient in t.terms.items():
            pieces.append((tuple(slots[p] for p in perm), coefficient * sign))
    return TensorElement(t.arity, pieces)


def commutative_ch32(lam: LambdaMat) -> TensorElement:
    """ch_{3/2}(U) with the star relations applied, then antisymmetrized over its four slots."""
    return antisymmetrize(ch32_tensor(lam).normalized(r4_rewrite_system(lam)))


def hermitian_relations(phi: PhiParams) -> QuadraticRelationSet:
    """
    Relations in Hermitian generators x0..x3, for each cyclic (k, l, m):

        cos(pi phi_k)[x0, xk] - i sin(pi(phi_l - phi_m)){xl, xm}
        cos(pi(phi_l - phi_m))[xl, xm] + i sin(pi phi_k){x0, xk}
    """
    table = x_table()
    x = [FreeElement.gen(mu) for mu in range(4)]

    def commutator(p: int, q: int) -> FreeElement:
        return x[p] * x[q] - x[q] * x[p]

    def anticommutator(p: int, q: int) -> FreeElement:
        return x[p] * x[q] + x[q] * x[p]

    labels, relations = [], []
    for k, l, m in CYCLIC:
        labels.append(f"x0-commutator[{k}]")
        relations.append(commutator(0, k) * cos_pi(phi[k]) - anticommutator(l, m) * i_sin_pi(phi[l] - phi[m]))
    for k, l, m in CYCLIC:
        labels.append(f"pair-commutator[{k}]")
        relations.append(commutator(l, m) * cos_pi(phi[l] - phi[m]) + anticommutator(0, k) * i_sin_pi(phi[k]))
    return QuadraticRelationSet(table, labels, relations)


def substitute(element: FreeElement, images: Sequence[FreeElement]) -> FreeElement:
    """Replace generator g by images[g] and expand."""
    total = FreeElement.zero()
    for word, coefficient in element.terms.items():
        product = FreeElement.unit(coefficient)
        for letter in word:
            product = product * images[letter]
        total = total + product
    return total


def hermitian_substitution(phi: PhiParams, epsilon_sign: int = 1) -> QuadraticRelationSet:
    """Four-plane relations for Lambda(phi) rewritten with z^0 = x^0, z^k = e^{pi i phi_k} x^k."""
    relations = r4_relations(LambdaMat.from_phi(phi), epsilon_sign, fold=False)
    omega = [UniScalar.one()] + [UniScalar.phase(phi[k] / 2) for k in (1, 2, 3)]
    images = [FreeElement.gen(mu, omega[mu]) for mu in range(4)]
    images += [FreeElement.gen(mu, omega[mu].star()) for mu in range(4)]
    rewritten = [substitute(rel, images) for rel in relations.relations]
    return QuadraticRelationSet(x_table(), list(relations.labels), rewritten)


def multilinearize(rel: FreeElement, size: int = 4) -> ScalarGrid:
    """sum f_{mu nu} x^mu x^nu -> the coefficient matrix f_{mu nu}."""
    matrix = [[UniScalar.zero() for _ in range(size)] for _ in range(size)]
    for word, coefficient in rel.terms.items():
        if len(word) != 2:
            raise DegreeError(f"multilinearize needs a homogeneous degree-2 element, found a word of length {len(word)}")
        mu, nu = word
        if mu >= size or nu >= size:
            raise DimensionMismatch(f"generator index out of range for a {size}x{size} matrix")
        matrix[mu][nu] = matrix[mu][nu] + coefficient
    return matrix


def grid_to_numpy(grid: ScalarGrid) -> np.ndarray:
    return np.array([[complex(v.to_complex(bits=53)) for v in row] for row in grid])
