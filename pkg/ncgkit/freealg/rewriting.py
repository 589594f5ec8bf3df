"""
Rewrite Systems
Swap and substitution rules over a generator table, normal forms and critical pair checking
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from ..config import DEFAULT_REWRITE_BUDGET
from ..errors import InvariantViolation, RewriteBudgetExceeded, RuleOrderError
from .scalars import UniScalar
from .words import FreeElement, GeneratorTable, Word

logger = logging.getLogger(__name__)

REDUCTION_CACHE_SIZE = 65536


@dataclass(frozen=True)
class Rule:
    lhs: Word
    rhs: FreeElement
    label: str


@dataclass
class CriticalPair:
    """An overlap or inclusion of two left-hand sides whose reducts disagree."""
    word: Word
    rules: Tuple[str, str]
    left: FreeElement
    right: FreeElement

    def describe(self, table: GeneratorTable) -> str:
        return (f"{table.format_word(self.word)} via {self.rules[0]} / {self.rules[1]}: "
                f"{self.left.format(table)} != {self.right.format(table)}")


class RewriteSystem:
    """Terminating rewrite system on words.

    Swap rules rewrite g_j g_i -> lambda g_i g_j when g_j is larger than g_i,
    with lambda a phase of modulus one.  Substitution rules replace a fixed
    word by an element all of whose words are smaller in the
    degree-lexicographic order, which makes every rule decreasing for a
    monomial well-order and guarantees termination.
    """

    def __init__(
        self,
        table: GeneratorTable,
        swaps: Optional[Dict[Tuple[int, int], UniScalar]] = None,
        substitutions: Sequence[Tuple[Word, FreeElement]] = (),
        name: str = 'rewrite system',
        budget: int = DEFAULT_REWRITE_BUDGET,
        check_order: bool = True,
        cache_size: int = REDUCTION_CACHE_SIZE,
    ):
        self.table = table
        self.name = name
        self.budget = budget
        self.rules: List[Rule] = []

        for (j, i), phase in (swaps or {}).items():
            if table.rank[j] <= table.rank[i]:
                raise RuleOrderError(f"swap rule {table.names[j]}{table.names[i]} does not decrease the order")
            if not phase.is_unimodular_monomial():
                raise InvariantViolation(f"swap phase for {table.names[j]}{table.names[i]} must have modulus one")
            self.rules.append(Rule((j, i), FreeElement({(i, j): phase}), f"swap({table.names[j]},{table.names[i]})"))

        for lhs, rhs in substitutions:
            lhs = tuple(lhs)
            rhs = FreeElement.coerce(rhs)
            if check_order:
                key = table.order_key(lhs)
                for word in rhs.terms:
                    if table.order_key(word) >= key:
                        raise RuleOrderError(
                            f"substitution {table.format_word(lhs)} -> ... contains non-smaller word {table.format_word(word)}")
            self.rules.append(Rule(lhs, rhs, f"subst({table.format_word(lhs)})"))

        # first rule wins for a repeated left-hand side
        self._by_lhs: Dict[Word, Rule] = {}
        for rule in self.rules:
            self._by_lhs.setdefault(rule.lhs, rule)
        self._lengths = sorted({len(rule.lhs) for rule in self.rules})
        # bounded per system; a word's reduct is cached only after it completes within budget
        self._steps = 0
        self._reduce_word = lru_cache(maxsize=cache_size)(self._reduce_uncached)
        logger.debug(f"{name}: {len(self.rules)} rules on {len(table)} generators")

    def _first_redex(self, word: Word) -> Optional[Tuple[int, Rule]]:
        """Leftmost match; among matches at one position the shortest left-hand side."""
        for start in range(len(word)):
            for length in self._lengths:
                if start + length > len(word):
                    break
                rule = self._by_lhs.get(word[start:start + length])
                if rule is not None:
                    return start, rule
        return None

    def is_irreducible(self, word: Word) -> bool:
        return self._first_redex(tuple(word)) is None

    def _reduce_uncached(self, word: Word) -> FreeElement:
        result: Dict[Word, UniScalar] = {}
        todo: List[Tuple[Word, UniScalar]] = [(word, UniScalar.one())]
        while todo:
            current, coefficient = todo.pop()
            hit = self._first_redex(current)
            if hit is None:
                result[current] = result[current] + coefficient if current in result else coefficient
                continue
            self._steps += 1
            if self._steps > self.budget:
                raise RewriteBudgetExceeded("rewrite budget exceeded", f"{self.name}: more than {self.budget} steps")
            start, rule = hit
            prefix, suffix = current[:start], current[start + len(rule.lhs):]
            for w, c in rule.rhs.terms.items():
                todo.append((prefix + w + suffix, coefficient * c))
        return FreeElement(result)

    def cache_info(self):
        """Hit and size statistics of the bounded word-reduction cache."""
        return self._reduce_word.cache_info()

    def normal_form(self, x: FreeElement) -> FreeElement:
        """Irreducible representative of x modulo the rule ideal; the step budget applies per call."""
        self._steps = 0
        pieces = []
        for word, coefficient in x.terms.items():
            for w, c in self._reduce_word(word).terms.items():
                pieces.append((w, coefficient * c))
        return FreeElement(pieces)

    def equal(self, x: FreeElement, y: FreeElement) -> bool:
        return self.normal_form(x - y).is_zero()

    def check_local_confluence(self) -> List[CriticalPair]:
        """Reduce both sides of every overlap and inclusion of left-hand sides."""
        unresolved: List[CriticalPair] = []
        for i, first in enumerate(self.rules):
            for j, second in enumerate(self.rules):
                l1, l2 = first.lhs, second.lhs
                # overlaps: proper suffix of l1 equals proper prefix of l2
                for k in range(1, min(len(l1), len(l2))):
                    if l1[-k:] != l2[:k]:
                        continue
                    word = l1 + l2[k:]
                    left = first.rhs * FreeElement.word(l2[k:])
                    right = FreeElement.word(l1[:-k]) * second.rhs
                    self._compare(word, first, second, left, right, unresolved)
                # inclusions: l2 occurs inside l1
                if i == j or len(l2) > len(l1) or (l1 == l2 and j < i):
                    continue
                for start in range(len(l1) - len(l2) + 1):
                    if l1[start:start + len(l2)] != l2:
                        continue
                    left = first.rhs
                    right = FreeElement.word(l1[:start]) * second.rhs * FreeElement.word(l1[start + len(l2):])
                    self._compare(l1, first, second, left, right, unresolved)
        if unresolved:
            logger.warning(f"{self.name}: {len(unresolved)} unresolved critical pairs")
        else:
            logger.info(f"{self.name}: all critical pairs resolve")
        return unresolved

    def _compare(self, word, first, second, left, right, unresolved):
        left_nf, right_nf = self.normal_form(left), self.normal_form(right)
        if not (left_nf - right_nf).is_zero():
            unresolved.append(CriticalPair(word, (first.label, second.label), left_nf, right_nf))


def normal_form(x: FreeElement, rs: RewriteSystem) -> FreeElement:
    return rs.normal_form(x)


def check_local_confluence(rs: RewriteSystem) -> List[CriticalPair]:
    return rs.check_local_confluence()
