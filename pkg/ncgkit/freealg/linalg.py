"""
Exact Linear Algebra
Rank and span comparison for sparse vectors with UniScalar entries
"""

import logging
from typing import Dict, Hashable, List, Sequence, Union

from .scalars import UniScalar
from .words import FreeElement

logger = logging.getLogger(__name__)

SparseVector = Dict[Hashable, UniScalar]


def _as_vector(row: Union[FreeElement, SparseVector]) -> SparseVector:
    if isinstance(row, FreeElement):
        return row.terms
    return {key: UniScalar.coerce(value) for key, value in row.items() if not UniScalar.coerce(value).is_zero()}


def exact_rank(rows: Sequence[Union[FreeElement, SparseVector]]) -> int:
    """Rank over the fraction field by fraction-free elimination.

    Entries live in an integral domain (rational combinations of
    cyclotomic phases and formal theta powers), so cross-multiplying by
    pivots never needs a division and every zero test is exact.
    """
    work: List[SparseVector] = [v for v in (_as_vector(r) for r in rows) if v]
    columns = sorted({key for v in work for key in v}, key=repr)
    rank = 0
    for column in columns:
        pivot_index = next((i for i in range(rank, len(work)) if column in work[i]), None)
        if pivot_index is None:
            continue
        work[rank], work[pivot_index] = work[pivot_index], work[rank]
        pivot = work[rank]
        p = pivot[column]
        for i in range(rank + 1, len(work)):
            row = work[i]
            if column not in row:
                continue
            factor = row[column]
            combined: SparseVector = {}
            for key in set(row) | set(pivot):
                value = row.get(key, UniScalar.zero()) * p - pivot.get(key, UniScalar.zero()) * factor
                if not value.is_zero():
                    combined[key] = value
            work[i] = combined
        rank += 1
        work = work[:rank] + [v for v in work[rank:] if v]
    return rank


def same_span(first: Sequence[Union[FreeElement, SparseVector]], second: Sequence[Union[FreeElement, SparseVector]]) -> bool:
    """rank(A) = rank(B) = rank(A u B)."""
    r1, r2 = exact_rank(first), exact_rank(second)
    joint = exact_rank(list(first) + list(second))
    logger.debug(f"span ranks: {r1}, {r2}, joint {joint}")
    return r1 == r2 == joint
