"""
NCG Kit - Heisenberg Module Package
Contains Gaussian packets, the bimodule actions on E_{d,c}(theta) and holomorphic structures
"""

from .packets import GaussPolyPacket, PacketTerm, eval_packet, random_packet
from .module import (
    ModuleParams,
    act_right_U,
    act_right_U_inv,
    act_right_V,
    act_right_V_inv,
    act_left_U,
    act_left_V,
    act_right_word,
    act_right_monomial,
    right_module_law_check,
    right_relation_check,
    left_relation_check,
    bimodule_commutation_check,
    nabla_z,
    nabla_z_shift_check,
    holomorphic_basis,
    bases1_basis,
    bases1_defect,
    leibniz_defect,
    random_word,
    STANDARD_MATRICES,
)

__all__ = [
    'GaussPolyPacket',
    'PacketTerm',
    'eval_packet',
    'random_packet',
    'ModuleParams',
    'act_right_U',
    'act_right_U_inv',
    'act_right_V',
    'act_right_V_inv',
    'act_left_U',
    'act_left_V',
    'act_right_word',
    'act_right_monomial',
    'right_module_law_check',
    'right_relation_check',
    'left_relation_check',
    'bimodule_commutation_check',
    'nabla_z',
    'nabla_z_shift_check',
    'holomorphic_basis',
    'bases1_basis',
    'bases1_defect',
    'leibniz_defect',
    'random_word',
    'STANDARD_MATRICES',
]
