"""
NCG Kit - Theta Ring Package
Contains certified theta constants, structure constants and homogeneous coordinate rings
"""

from .theta import ThetaChar, ThetaValue, theta_const, theta_symmetry_check, reduce_characteristic, tail_bound
from .structure import (
    StructTensor,
    CongruenceClass,
    index_congruence,
    index_set,
    struct_constants,
    struct_constant_by_window,
    struct_rows_for_csv,
)
from .ring import (
    GradedRing,
    RingElement,
    AssociativityReport,
    KernelResult,
    ring_multiply,
    associativity_defect,
    multiplication_matrix,
    kernel_from_matrix,
    quadratic_kernel,
    rank_plateau,
    classify_poli2,
)
from .presentation import presentation_export, relation_space_angles, max_relation_angle

__all__ = [
    'ThetaChar',
    'ThetaValue',
    'theta_const',
    'theta_symmetry_check',
    'reduce_characteristic',
    'tail_bound',
    'StructTensor',
    'CongruenceClass',
    'index_congruence',
    'index_set',
    'struct_constants',
    'struct_constant_by_window',
    'struct_rows_for_csv',
    'GradedRing',
    'RingElement',
    'AssociativityReport',
    'KernelResult',
    'ring_multiply',
    'associativity_defect',
    'multiplication_matrix',
    'kernel_from_matrix',
    'quadratic_kernel',
    'rank_plateau',
    'classify_poli2',
    'presentation_export',
    'relation_space_angles',
    'max_relation_angle',
]
