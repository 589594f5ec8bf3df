"""
NCG Kit - Spheres Package
Contains the S2 and S4 projectors, the three-sphere relations and the characteristic variety sampler
"""

from .s2 import ProjectorModel, s2_rewrite_system, s2_projector, s2_volume_form, verify_projector, s2_ch1_check
from .s4 import S4Algebra, s4_algebra, s4_projector, verify_s4_projector, swap_phases
from .s3 import (
    PhiParams,
    LambdaMat,
    PauliBasis,
    QuadraticRelationSet,
    r4_rewrite_system,
    r4_relations,
    s3_relations,
    unitary_matrix,
    unitarity_expansion,
    ch12_tensor,
    ch12_closed_form,
    ch32_tensor,
    antisymmetrize,
    commutative_ch32,
    hermitian_relations,
    hermitian_substitution,
    substitute,
    multilinearize,
)
from .charvar import (
    BilinearSystem,
    OrbitReport,
    build_bilinear_system,
    char_variety_rank,
    sigma_map,
    sigma_orbit_check,
    left_action_points,
    sample_random,
    line_search,
    project_to_locus,
    sampler_rows_for_csv,
)

__all__ = [
    'ProjectorModel',
    's2_rewrite_system',
    's2_projector',
    's2_volume_form',
    'verify_projector',
    's2_ch1_check',
    'S4Algebra',
    's4_algebra',
    's4_projector',
    'verify_s4_projector',
    'swap_phases',
    'PhiParams',
    'LambdaMat',
    'PauliBasis',
    'QuadraticRelationSet',
    'r4_rewrite_system',
    'r4_relations',
    's3_relations',
    'unitary_matrix',
    'unitarity_expansion',
    'ch12_tensor',
    'ch12_closed_form',
    'ch32_tensor',
    'antisymmetrize',
    'commutative_ch32',
    'hermitian_relations',
    'hermitian_substitution',
    'substitute',
    'multilinearize',
    'BilinearSystem',
    'OrbitReport',
    'build_bilinear_system',
    'char_variety_rank',
    'sigma_map',
    'sigma_orbit_check',
    'left_action_points',
    'sample_random',
    'line_search',
    'project_to_locus',
    'sampler_rows_for_csv',
]
