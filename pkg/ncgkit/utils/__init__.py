"""
NCG Kit - Utils Package
Contains parameter parsing, precision budgeting and atomic file helpers
"""

from .param_parser import ParamParser, parse_theta, parse_tau, parse_sl2, parse_phi, parse_rational
from .precision_budget import PrecisionBudget, ErrorBudget
from .atomic_io import atomic_write_text

__all__ = [
    'ParamParser',
    'parse_theta',
    'parse_tau',
    'parse_sl2',
    'parse_phi',
    'parse_rational',
    'PrecisionBudget',
    'ErrorBudget',
    'atomic_write_text',
]
