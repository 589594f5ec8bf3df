"""
Precision Budget Utility
Splits a requested absolute error between series truncation and rounding, and picks working precision
"""

import math
import logging
from dataclasses import dataclass
from typing import Dict, Optional

from ..errors import ParameterDomainError

logger = logging.getLogger(__name__)

GUARD_BITS = 32


@dataclass(frozen=True)
class ErrorBudget:
    total: float
    tail: float
    rounding: float
    bits: int

    def to_dict(self) -> Dict[str, float]:
        return {'total': self.total, 'tail': self.tail, 'rounding': self.rounding, 'bits': self.bits}


class PrecisionBudget:
    """Utility for error allocation in certified evaluations."""

    def __init__(self, allocation: Optional[Dict[str, float]] = None):
        """Initialize the precision budget with the tail/rounding allocation."""
        self.allocation = allocation or {
            'tail': 0.5,
            'rounding': 0.5,
        }
        if abs(sum(self.allocation.values()) - 1.0) > 1e-12:
            raise ParameterDomainError(f"allocation must sum to 1, got {self.allocation}")

    def bits_for(self, eps: float, minimum_bits: int = 53) -> int:
        """Working precision so that rounding stays far below eps."""
        needed = math.ceil(-math.log2(eps)) + GUARD_BITS if eps < 1 else GUARD_BITS
        return max(minimum_bits, needed)

    def split(self, eps: float, minimum_bits: int = 53) -> ErrorBudget:
        """
        Split eps into tail and rounding shares.

        Args:
            eps: Total absolute error allowed
            minimum_bits: Lower bound for the working precision

        Returns:
            ErrorBudget with the shares and the chosen precision
        """
        if not eps > 0:
            raise ParameterDomainError(f"eps must be positive, got {eps}")
        budget = ErrorBudget(
            total=eps,
            tail=eps * self.allocation['tail'],
            rounding=eps * self.allocation['rounding'],
            bits=self.bits_for(eps, minimum_bits),
        )
        logger.debug(f"Error budget for eps={eps:g}: {budget}")
        return budget
