"""
Words and Free Elements
Generator tables with involution and order, and noncommutative polynomials over UniScalar
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple, Union

from ..errors import InvariantViolation
from .scalars import UniScalar

logger = logging.getLogger(__name__)

Word = Tuple[int, ...]


@dataclass(frozen=True)
class GeneratorTable:
    """Generator symbols with an involution pairing and a total order.

    Attributes:
        names: Generator symbols, indexed 0..n-1
        star: star[i] is the index of the adjoint of generator i
        rank: rank[i] is the position of generator i in the rewrite order
    """
    names: Tuple[str, ...]
    star: Tuple[int, ...]
    rank: Tuple[int, ...]

    def __post_init__(self):
        n = len(self.names)
        if len(set(self.names)) != n:
            raise InvariantViolation("generator names must be distinct")
        if len(self.star) != n or any(not 0 <= s < n for s in self.star):
            raise InvariantViolation("star table has wrong size or range")
        if any(self.star[self.star[i]] != i for i in range(n)):
            raise InvariantViolation("star must be an involution on generator indices")
        if sorted(self.rank) != list(range(n)):
            raise InvariantViolation("order must be a strict total order on the generators")

    @classmethod
    def build(cls, names: Sequence[str], pairs: Iterable[Tuple[str, str]] = (), order: Optional[Sequence[str]] = None) -> 'GeneratorTable':
        """Create a table; generators not listed in pairs are Hermitian.

        Args:
            names: Generator symbols
            pairs: (g, g*) name pairs exchanged by the involution
            order: Names from smallest to largest; defaults to the order of names
        """
        names = tuple(names)
        index = {name: i for i, name in enumerate(names)}
        star = list(range(len(names)))
        for left, right in pairs:
            star[index[left]] = index[right]
            star[index[right]] = index[left]
        order = tuple(order) if order is not None else names
        rank = [0] * len(names)
        for position, name in enumerate(order):
            rank[index[name]] = position
        return cls(names, tuple(star), tuple(rank))

    def __len__(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def star_word(self, word: Word) -> Word:
        return tuple(self.star[g] for g in reversed(word))

    def order_key(self, word: Word) -> Tuple[int, Tuple[int, ...]]:
        """Degree-lexicographic key: length first, then generator ranks."""
        return len(word), tuple(self.rank[g] for g in word)

    def format_word(self, word: Word) -> str:
        return '*'.join(self.names[g] for g in word) if word else '1'


class FreeElement:
    """Finite sum of words with UniScalar coefficients; the empty word is the unit."""

    __slots__ = ('_terms',)
    __hash__ = None

    def __init__(self, terms: Optional[Union[Mapping[Word, UniScalar], Iterable[Tuple[Word, UniScalar]]]] = None):
        acc: Dict[Word, UniScalar] = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for word, coefficient in items:
                word = tuple(word)
                coefficient = UniScalar.coerce(coefficient)
                acc[word] = acc[word] + coefficient if word in acc else coefficient
        self._terms = {word: c for word, c in acc.items() if not c.is_zero()}

    @classmethod
    def zero(cls) -> 'FreeElement':
        return cls()

    @classmethod
    def unit(cls, coefficient=1) -> 'FreeElement':
        return cls({(): coefficient})

    @classmethod
    def gen(cls, index: int, coefficient=1) -> 'FreeElement':
        return cls({(index,): coefficient})

    @classmethod
    def word(cls, word: Word, coefficient=1) -> 'FreeElement':
        return cls({tuple(word): coefficient})

    @classmethod
    def coerce(cls, value) -> 'FreeElement':
        if isinstance(value, FreeElement):
            return value
        return cls.unit(UniScalar.coerce(value))

    @property
    def terms(self) -> Dict[Word, UniScalar]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def constant_term(self) -> UniScalar:
        return self._terms.get((), UniScalar.zero())

    def without_constant(self) -> 'FreeElement':
        return FreeElement({w: c for w, c in self._terms.items() if w})

    def degrees(self) -> set:
        return {len(w) for w in self._terms}

    def __add__(self, other) -> 'FreeElement':
        other = FreeElement.coerce(other)
        return FreeElement(list(self._terms.items()) + list(other._terms.items()))

    __radd__ = __add__

    def __neg__(self) -> 'FreeElement':
        return FreeElement({w: -c for w, c in self._terms.items()})

    def __sub__(self, other) -> 'FreeElement':
        return self + (-FreeElement.coerce(other))

    def __rsub__(self, other) -> 'FreeElement':
        return FreeElement.coerce(other) - self

    def __mul__(self, other) -> 'FreeElement':
        if isinstance(other, (int, Fraction, UniScalar)):
            scalar = UniScalar.coerce(other)
            return FreeElement({w: c * scalar for w, c in self._terms.items()})
        if not isinstance(other, FreeElement):
            return NotImplemented
        products = []
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                products.append((w1 + w2, c1 * c2))
        return FreeElement(products)

    def __rmul__(self, other) -> 'FreeElement':
        if isinstance(other, (int, Fraction, UniScalar)):
            return self * other
        return NotImplemented

    def star(self, table: GeneratorTable) -> 'FreeElement':
        return FreeElement({table.star_word(w): c.star() for w, c in self._terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, FreeElement):
            try:
                other = FreeElement.coerce(other)
            except TypeError:
                return NotImplemented
        return (self - other).is_zero()

    def format(self, table: GeneratorTable) -> str:
        if not self._terms:
            return '0'
        return ' + '.join(f"{c!r}*{table.format_word(w)}" for w, c in sorted(self._terms.items()))

    def __repr__(self) -> str:
        return f"FreeElement({len(self._terms)} terms)"
