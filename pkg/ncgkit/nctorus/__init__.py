"""
NCG Kit - Noncommutative Torus Package
Contains Fourier series on A_theta, quadratic irrationalities and the SL(2, Z) Morita action
"""

from .quadratic import QuadraticNumber, QuadIrr
from .sl2 import SL2Mat
from .torus import (
    TorusElement,
    NumericTorusElement,
    ComplexStructure,
    torus_mul,
    trace_chi,
    delta,
    tau_components,
    leibniz_defect,
    delta_tau,
    delta_tau_leibniz_defect,
    torus_rewrite_system,
    k0_rank,
    module_rank,
)
from .morita import (
    morita_theta,
    is_fixed,
    is_rm,
    fixing_matrices,
    tensor_degree_check,
    DegreeReport,
    canonicalize_theta,
)

__all__ = [
    'QuadraticNumber',
    'QuadIrr',
    'SL2Mat',
    'TorusElement',
    'NumericTorusElement',
    'ComplexStructure',
    'torus_mul',
    'trace_chi',
    'delta',
    'tau_components',
    'leibniz_defect',
    'delta_tau',
    'delta_tau_leibniz_defect',
    'torus_rewrite_system',
    'k0_rank',
    'module_rank',
    'morita_theta',
    'is_fixed',
    'is_rm',
    'fixing_matrices',
    'tensor_degree_check',
    'DegreeReport',
    'canonicalize_theta',
]
