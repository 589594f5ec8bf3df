"""
NCG Kit - Free Algebra Package
Contains exact scalars, words, rewrite systems, tensors and Chern characters
"""

from .scalars import UniScalar, theta_phase
from .words import GeneratorTable, FreeElement
from .rewriting import RewriteSystem, CriticalPair, normal_form, check_local_confluence
from .tensors import TensorElement, AlgMatrix, chern_even, chern_odd, tensor_is_zero
from .linalg import exact_rank, same_span

__all__ = [
    'UniScalar',
    'theta_phase',
    'GeneratorTable',
    'FreeElement',
    'RewriteSystem',
    'CriticalPair',
    'normal_form',
    'check_local_confluence',
    'TensorElement',
    'AlgMatrix',
    'chern_even',
    'chern_odd',
    'tensor_is_zero',
    'exact_rank',
    'same_span',
]
