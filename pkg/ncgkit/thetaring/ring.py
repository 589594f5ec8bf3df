"""
Homogeneous Coordinate Rings
Graded ring B_g(theta, tau) built from structure constants at a fixed point g theta = theta
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import mpmath
import numpy as np

from ..errors import DegreeError, DimensionMismatch, ParameterDomainError
from ..nctorus.morita import is_fixed
from ..nctorus.quadratic import QuadIrr, QuadraticNumber
from ..nctorus.sl2 import SL2Mat
from .structure import StructTensor, struct_constants

logger = logging.getLogger(__name__)

DEFAULT_TOL_SWEEP = (1e-6, 1e-7, 1e-8, 1e-9, 1e-10)


class GradedRing:
    """B_g(theta, tau) = sum over n >= 1 of H_{g^n}; multiplication tables are built lazily."""

    def __init__(self, g: SL2Mat, theta: QuadIrr, tau: Tuple[Fraction, Fraction], eps: float = 1e-12, bits: int = 0):
        if g.c <= 0:
            raise DegreeError(f"deg g = {g.c} must be positive for a coordinate ring", f"g={g}")
        if not is_fixed(g, theta):
            raise ParameterDomainError(f"theta={theta} is not fixed by g={g}")
        if (QuadraticNumber.coerce(theta) * g.c + g.d).sign() <= 0:
            raise ParameterDomainError(f"c*theta + d must be positive for g={g}")
        if not Fraction(tau[1]) < 0:
            raise ParameterDomainError(f"Im(tau) must be negative, got {tau[1]}")
        self.g = g
        self.theta = theta
        self.tau = (Fraction(tau[0]), Fraction(tau[1]))
        self.eps = eps
        self.bits = bits
        self._powers: Dict[int, SL2Mat] = {0: SL2Mat.identity()}
        self._tables: Dict[Tuple[int, int], StructTensor] = {}
        logger.info(f"GradedRing initialized: g={g}, theta={theta}, tau={tau}, eps={eps:g}")

    def power(self, n: int) -> SL2Mat:
        if n not in self._powers:
            self._powers[n] = self.power(n - 1) @ self.g
        return self._powers[n]

    def dim(self, n: int) -> int:
        """deg(g^n), the lower-left entry of g^n."""
        if n < 1:
            raise DegreeError(f"graded pieces start in degree 1, got {n}")
        return self.power(n).c

    def table(self, n: int, m: int) -> StructTensor:
        """Structure constants of H_{g^n} x H_{g^m} -> H_{g^{n+m}}."""
        key = (n, m)
        if key not in self._tables:
            logger.info(f"Building multiplication table for degrees ({n}, {m})")
            self._tables[key] = struct_constants(self.power(n), self.power(m), self.theta, self.tau, self.eps, self.bits)
        return self._tables[key]


@dataclass
class RingElement:
    """Coefficient vector in degree n, with one error bound covering every coordinate."""
    degree: int
    coeffs: List[mpmath.mpc]
    err: mpmath.mpf = field(default_factory=lambda: mpmath.mpf(0))

    @classmethod
    def basis(cls, ring: GradedRing, degree: int, index: int) -> 'RingElement':
        """e_index, 1-based."""
        coeffs = [mpmath.mpc(0)] * ring.dim(degree)
        coeffs[index - 1] = mpmath.mpc(1)
        return cls(degree, coeffs)

    @classmethod
    def zero(cls, ring: GradedRing, degree: int) -> 'RingElement':
        return cls(degree, [mpmath.mpc(0)] * ring.dim(degree))

    def __add__(self, other: 'RingElement') -> 'RingElement':
        if self.degree != other.degree or len(self.coeffs) != len(other.coeffs):
            raise DimensionMismatch(f"cannot add degree {self.degree} and degree {other.degree} elements")
        return RingElement(self.degree, [a + b for a, b in zip(self.coeffs, other.coeffs)], self.err + other.err)

    def scale(self, factor) -> 'RingElement':
        factor = mpmath.mpc(factor)
        return RingElement(self.degree, [factor * a for a in self.coeffs], abs(factor) * self.err)

    def max_abs_difference(self, other: 'RingElement') -> mpmath.mpf:
        if len(self.coeffs) != len(other.coeffs):
            raise DimensionMismatch("vectors of different length")
        return max((abs(a - b) for a, b in zip(self.coeffs, other.coeffs)), default=mpmath.mpf(0))


def ring_multiply(ring: GradedRing, u: RingElement, v: RingElement) -> RingElement:
    """w_gamma = sum C^gamma_{alpha, beta} u_alpha v_beta, with first-order error propagation."""
    n, m = u.degree, v.degree
    table = ring.table(n, m)
    if len(u.coeffs) != table.c1 or len(v.coeffs) != table.c2:
        raise DimensionMismatch(
            f"expected vectors of length {table.c1} and {table.c2}, got {len(u.coeffs)} and {len(v.coeffs)}")
    out: List[mpmath.mpc] = []
    worst = mpmath.mpf(0)
    for gamma in range(1, table.c12 + 1):
        total = mpmath.mpc(0)
        err = mpmath.mpf(0)
        for alpha, ua in enumerate(u.coeffs, start=1):
            if ua == 0 and u.err == 0:
                continue
            for beta, vb in enumerate(v.coeffs, start=1):
                value, value_err = table.entries[(gamma, alpha, beta)]
                total += value * ua * vb
                ua_bound, vb_bound = abs(ua) + u.err, abs(vb) + v.err
                err += value_err * ua_bound * vb_bound + abs(value) * (u.err * vb_bound + abs(ua) * v.err)
        out.append(total)
        worst = max(worst, err)
    return RingElement(n + m, out, worst)


@dataclass
class AssociativityReport:
    degrees: Tuple[int, int, int]
    defect: mpmath.mpf
    error_bound: mpmath.mpf
    triples: int

    @property
    def within_bound(self) -> bool:
        return self.defect <= 10 * self.error_bound


def associativity_defect(ring: GradedRing, n: int, m: int, k: int) -> AssociativityReport:
    """max over basis triples of |(e_a e_b) e_c - e_a (e_b e_c)|."""
    dims = [ring.dim(x) for x in (n, m, k)]
    if min(dims) == 0:
        return AssociativityReport((n, m, k), mpmath.mpf(0), mpmath.mpf(0), 0)
    defect = mpmath.mpf(0)
    bound = mpmath.mpf(0)
    count = 0
    right_products = {}
    for b in range(1, dims[1] + 1):
        for c in range(1, dims[2] + 1):
            right_products[(b, c)] = ring_multiply(ring, RingElement.basis(ring, m, b), RingElement.basis(ring, k, c))
    for a in range(1, dims[0] + 1):
        ea = RingElement.basis(ring, n, a)
        for b in range(1, dims[1] + 1):
            left = ring_multiply(ring, ea, RingElement.basis(ring, m, b))
            for c in range(1, dims[2] + 1):
                lhs = ring_multiply(ring, left, RingElement.basis(ring, k, c))
                rhs = ring_multiply(ring, ea, right_products[(b, c)])
                defect = max(defect, lhs.max_abs_difference(rhs))
                bound = max(bound, lhs.err + rhs.err)
                count += 1
    logger.info(f"associativity defect in degrees ({n},{m},{k}): {mpmath.nstr(defect, 3)} over {count} triples")
    return AssociativityReport((n, m, k), defect, bound, count)


def multiplication_matrix(ring: GradedRing) -> Tuple[np.ndarray, np.ndarray]:
    """H_g x H_g -> H_{g^2} as a deg(g^2) x deg(g)^2 complex matrix; column (alpha, beta) at (alpha-1)*c + beta-1.

    Returns the matrix and the matching entrywise error bounds.
    """
    table = ring.table(1, 1)
    c = table.c1
    matrix = np.zeros((table.c12, c * c), dtype=complex)
    errors = np.zeros((table.c12, c * c))
    for (gamma, alpha, beta), (value, err) in table.entries.items():
        column = (alpha - 1) * c + (beta - 1)
        matrix[gamma - 1, column] = complex(value)
        errors[gamma - 1, column] = float(err)
    return matrix, errors


@dataclass
class KernelResult:
    rank: int
    kernel_dim: int
    basis: np.ndarray
    singular_values: np.ndarray
    tol: float
    coefficient_error: float


def numerical_rank(singular_values: np.ndarray, tol: float) -> int:
    """Singular values at or below tol * sigma_max count as zero."""
    if singular_values.size == 0 or singular_values[0] == 0:
        return 0
    return int(np.sum(singular_values > tol * singular_values[0]))


def kernel_from_matrix(matrix: np.ndarray, tol: float, entry_errors: Optional[np.ndarray] = None) -> KernelResult:
    """Rank and orthonormal kernel basis (rows) of a complex matrix via the SVD."""
    _, s, vh = np.linalg.svd(matrix)
    rank = numerical_rank(s, tol)
    basis = vh[rank:].conj()
    perturbation = np.finfo(float).eps * (s[0] if s.size else 0.0) * max(matrix.shape)
    if entry_errors is not None:
        perturbation += float(np.linalg.norm(entry_errors))
    gap = s[rank - 1] if rank > 0 else 1.0
    return KernelResult(rank, matrix.shape[1] - rank, basis, s, tol, float(perturbation / gap))


def quadratic_kernel(ring: GradedRing, tol: float = 1e-8) -> KernelResult:
    """Kernel of H_g x H_g -> H_{g^2}: the quadratic relations of the ring."""
    if ring.dim(1) <= 0 or ring.dim(2) <= 0:
        raise DegreeError("quadratic relations need deg g > 0 and deg g^2 > 0")
    matrix, errors = multiplication_matrix(ring)
    result = kernel_from_matrix(matrix, tol, errors)
    logger.info(f"quadratic_kernel: {matrix.shape[1]} -> {matrix.shape[0]}, rank {result.rank}, kernel {result.kernel_dim}")
    return result


def rank_plateau(matrix: np.ndarray, tols: Sequence[float] = DEFAULT_TOL_SWEEP) -> Dict[str, object]:
    """Numerical rank per tolerance and whether it is constant across the sweep."""
    s = np.linalg.svd(matrix, compute_uv=False)
    ranks = {tol: numerical_rank(s, tol) for tol in tols}
    stable = len(set(ranks.values())) == 1
    if not stable:
        logger.warning(f"rank is not stable across the tolerance sweep: {ranks}")
    return {'ranks': ranks, 'stable': stable, 'rank': next(iter(ranks.values())) if stable else None}


def classify_poli2(g: SL2Mat) -> str:
    """Strongest label from: c >= a+d generated in degree one, c >= a+d+1 quadratic, c >= a+d+2 Koszul.

    Requires positive real eigenvalues (trace > 0 and trace^2 >= 4 det); otherwise 'outside'.
    """
    trace = g.trace
    if trace <= 0 or trace * trace < 4:
        return 'outside'
    if g.c >= trace + 2:
        return 'koszul'
    if g.c >= trace + 1:
        return 'quadratic'
    if g.c >= trace:
        return 'generated-in-degree-1'
    return 'outside'
