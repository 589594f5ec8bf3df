"""
Tensors, Matrices and Chern Characters
Elements of A (x) A~^{(x)k}, matrices over a *-algebra and the even/odd Chern characters
"""

import itertools
import logging
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from ..errors import DimensionMismatch
from .rewriting import RewriteSystem
from .scalars import UniScalar
from .words import FreeElement, GeneratorTable, Word

logger = logging.getLogger(__name__)

Slots = Tuple[Word, ...]


class TensorElement:
    """Finite sum of tensor products of words.

    Every slot after the first lives in A~ = A / C1, so a term with an
    empty word in a non-first slot is dropped on construction.
    """

    __slots__ = ('arity', '_terms')
    __hash__ = None

    def __init__(self, arity: int, terms: Optional[Union[Mapping[Slots, UniScalar], Iterable[Tuple[Slots, UniScalar]]]] = None):
        if arity < 1:
            raise DimensionMismatch(f"tensor arity must be at least 1, got {arity}")
        self.arity = arity
        acc: Dict[Slots, UniScalar] = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for slots, coefficient in items:
                slots = tuple(tuple(w) for w in slots)
                if len(slots) != arity:
                    raise DimensionMismatch(f"expected {arity} slots, got {len(slots)}")
                if any(len(w) == 0 for w in slots[1:]):
                    continue
                coefficient = UniScalar.coerce(coefficient)
                acc[slots] = acc[slots] + coefficient if slots in acc else coefficient
        self._terms = {slots: c for slots, c in acc.items() if not c.is_zero()}

    @classmethod
    def from_factors(cls, factors: Sequence[FreeElement], coefficient=1) -> 'TensorElement':
        """Multilinear expansion of factors[0] (x) factors[1] (x) ..."""
        coefficient = UniScalar.coerce(coefficient)
        pieces = []
        for choice in itertools.product(*(f.terms.items() for f in factors)):
            c = coefficient
            for _, factor_coefficient in choice:
                c = c * factor_coefficient
            pieces.append((tuple(w for w, _ in choice), c))
        return cls(len(factors), pieces)

    @property
    def terms(self) -> Dict[Slots, UniScalar]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def _check(self, other: 'TensorElement'):
        if self.arity != other.arity:
            raise DimensionMismatch(f"tensor arity {self.arity} vs {other.arity}")

    def __add__(self, other: 'TensorElement') -> 'TensorElement':
        self._check(other)
        return TensorElement(self.arity, list(self._terms.items()) + list(other._terms.items()))

    def __neg__(self) -> 'TensorElement':
        return TensorElement(self.arity, {s: -c for s, c in self._terms.items()})

    def __sub__(self, other: 'TensorElement') -> 'TensorElement':
        return self + (-other)

    def __mul__(self, scalar) -> 'TensorElement':
        scalar = UniScalar.coerce(scalar)
        return TensorElement(self.arity, {s: c * scalar for s, c in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.arity == other.arity and (self - other).is_zero()

    def normalized(self, rs: RewriteSystem) -> 'TensorElement':
        """Reduce every slot by rs and re-expand; constants drop out of non-first slots."""
        pieces = []
        for slots, coefficient in self._terms.items():
            factors = [rs.normal_form(FreeElement.word(w)) for w in slots]
            pieces.extend(TensorElement.from_factors(factors, coefficient)._terms.items())
        return TensorElement(self.arity, pieces)

    def coefficient(self, slots: Sequence[Word]) -> UniScalar:
        return self._terms.get(tuple(tuple(w) for w in slots), UniScalar.zero())

    def format(self, table: GeneratorTable) -> str:
        if not self._terms:
            return '0'
        return ' + '.join(
            f"{c!r}*" + ' (x) '.join(table.format_word(w) for w in slots)
            for slots, c in sorted(self._terms.items()))

    def __repr__(self) -> str:
        return f"TensorElement(arity={self.arity}, {len(self._terms)} terms)"


def tensor_is_zero(t: TensorElement, rs: RewriteSystem) -> bool:
    return t.normalized(rs).is_zero()


class AlgMatrix:
    """Square matrix of FreeElement entries over a generator table."""

    def __init__(self, rows: Sequence[Sequence[FreeElement]], table: GeneratorTable):
        self.rows = tuple(tuple(FreeElement.coerce(entry) for entry in row) for row in rows)
        self.table = table
        size = len(self.rows)
        if size == 0 or any(len(row) != size for row in self.rows):
            raise DimensionMismatch("AlgMatrix must be square and nonempty")

    @classmethod
    def identity(cls, size: int, table: GeneratorTable) -> 'AlgMatrix':
        return cls([[FreeElement.unit() if i == j else FreeElement.zero() for j in range(size)] for i in range(size)], table)

    @classmethod
    def from_scalar_expansion(cls, basis: Sequence[Sequence[Sequence[UniScalar]]], entries: Sequence[FreeElement], table: GeneratorTable) -> 'AlgMatrix':
        """sum_mu basis[mu] * entries[mu] for scalar matrices basis[mu]."""
        size = len(basis[0])
        rows = []
        for i in range(size):
            row = []
            for j in range(size):
                total = FreeElement.zero()
                for matrix, element in zip(basis, entries):
                    total = total + element * matrix[i][j]
                row.append(total)
            rows.append(row)
        return cls(rows, table)

    @property
    def size(self) -> int:
        return len(self.rows)

    def __getitem__(self, index: Tuple[int, int]) -> FreeElement:
        i, j = index
        return self.rows[i][j]

    def _check(self, other: 'AlgMatrix'):
        if self.size != other.size:
            raise DimensionMismatch(f"matrix sizes {self.size} vs {other.size}")

    def __add__(self, other: 'AlgMatrix') -> 'AlgMatrix':
        self._check(other)
        return AlgMatrix([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)], self.table)

    def __sub__(self, other: 'AlgMatrix') -> 'AlgMatrix':
        self._check(other)
        return AlgMatrix([[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)], self.table)

    def scale(self, scalar) -> 'AlgMatrix':
        return AlgMatrix([[entry * UniScalar.coerce(scalar) for entry in row] for row in self.rows], self.table)

    def matmul(self, other: 'AlgMatrix', rs: Optional[RewriteSystem] = None) -> 'AlgMatrix':
        self._check(other)
        n = self.size
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                total = FreeElement.zero()
                for k in range(n):
                    total = total + self.rows[i][k] * other.rows[k][j]
                row.append(rs.normal_form(total) if rs is not None else total)
            rows.append(row)
        return AlgMatrix(rows, self.table)

    def adjoint(self) -> 'AlgMatrix':
        """Entrywise star composed with transpose."""
        n = self.size
        return AlgMatrix([[self.rows[j][i].star(self.table) for j in range(n)] for i in range(n)], self.table)

    def normalized(self, rs: RewriteSystem) -> 'AlgMatrix':
        return AlgMatrix([[rs.normal_form(entry) for entry in row] for row in self.rows], self.table)

    def is_zero(self, rs: Optional[RewriteSystem] = None) -> bool:
        matrix = self.normalized(rs) if rs is not None else self
        return all(entry.is_zero() for row in matrix.rows for entry in row)

    def equals(self, other: 'AlgMatrix', rs: Optional[RewriteSystem] = None) -> bool:
        return (self - other).is_zero(rs)


def _chain_sum(matrices: Sequence[AlgMatrix]) -> TensorElement:
    """sum over i_0..i_{n-1} of M_0[i_0][i_1] (x) M_1[i_1][i_2] (x) ... (x) M_{n-1}[i_{n-1}][i_0]."""
    size = matrices[0].size
    arity = len(matrices)
    pieces: List = []
    for indices in itertools.product(range(size), repeat=arity):
        factors = []
        for slot, matrix in enumerate(matrices):
            entry = matrix.rows[indices[slot]][indices[(slot + 1) % arity]]
            if entry.is_zero():
                break
            factors.append(entry)
        else:
            pieces.extend(TensorElement.from_factors(factors).terms.items())
    return TensorElement(arity, pieces)


def chern_even(e: AlgMatrix, k: int) -> TensorElement:
    """ch_k(e) = Tr((e - 1/2) (x) e (x) ... (x) e) with 2k + 1 slots.

    Idempotency of e is not assumed.
    """
    if k < 0:
        raise DimensionMismatch(f"k must be nonnegative, got {k}")
    shifted = e - AlgMatrix.identity(e.size, e.table).scale(Fraction(1, 2))
    return _chain_sum([shifted] + [e] * (2 * k))


def chern_odd(u: AlgMatrix, k: int) -> TensorElement:
    """ch_{k+1/2}(U): alternating U, U* chain with 2k + 2 slots minus the chain starting at U*."""
    if k < 0:
        raise DimensionMismatch(f"k must be nonnegative, got {k}")
    u_star = u.adjoint()
    forward = _chain_sum([u, u_star] * (k + 1))
    backward = _chain_sum([u_star, u] * (k + 1))
    return forward - backward
