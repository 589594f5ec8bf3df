"""
Presentation Export
Generators and numeric quadratic relations of B_g(theta, tau) as a JSON-ready record
"""

import logging
from typing import Dict, List, Optional

import numpy as np
from scipy.linalg import subspace_angles

from .. import __version__
from ..errors import DimensionMismatch, ParameterDomainError
from .ring import GradedRing, classify_poli2, quadratic_kernel

logger = logging.getLogger(__name__)

# coefficients at or below this magnitude are dropped from the exported relations
ZERO_FLOOR = 1e-15


def _format_tau(tau) -> str:
    return f"{float(tau[0])!r},{float(tau[1])!r}"


def presentation_export(ring: GradedRing, eps: float, tol: float, seed: int = 0) -> Dict:
    """
    Build the presentation record of the ring.

    Args:
        ring: Coordinate ring at a fixed point
        eps: Certified error used for the structure constants
        tol: Relative rank threshold
        seed: Recorded in the provenance block

    Returns:
        Dict with generators, relations, params, provenance and classification
    """
    label = classify_poli2(ring.g)
    if label not in ('quadratic', 'koszul'):
        raise ParameterDomainError(f"g={ring.g} is classified as {label!r}; no quadratic presentation is claimed")
    kernel = quadratic_kernel(ring, tol)
    c = ring.dim(1)
    floor = max(kernel.coefficient_error, ZERO_FLOOR)
    relations: List[List[Dict]] = []
    for vector in kernel.basis:
        terms = []
        for column, coefficient in enumerate(vector):
            if abs(coefficient) <= floor:
                continue
            i, j = divmod(column, c)
            terms.append({
                'i': i + 1,
                'j': j + 1,
                're': float(coefficient.real),
                'im': float(coefficient.imag),
                'err': float(kernel.coefficient_error),
            })
        relations.append(terms)
    g = ring.g
    record = {
        'generators': [f"x{k}" for k in range(1, c + 1)],
        'relations': relations,
        'params': {
            'theta': str(ring.theta),
            'tau': _format_tau(ring.tau),
            'g': [[g.a, g.b], [g.c, g.d]],
            'epsilon': eps,
            'tol': tol,
        },
        'provenance': {'version': __version__, 'seed': seed},
        'classification': label,
        'rank': kernel.rank,
    }
    logger.info(f"presentation: {c} generators, {len(relations)} relations, class {label}")
    return record


def relation_matrix(record: Dict) -> np.ndarray:
    """Dense relation vectors (one row per relation) rebuilt from a presentation record."""
    c = len(record['generators'])
    rows = np.zeros((len(record['relations']), c * c), dtype=complex)
    for row, terms in enumerate(record['relations']):
        for term in terms:
            rows[row, (term['i'] - 1) * c + term['j'] - 1] = complex(term['re'], term['im'])
    return rows


def relation_space_angles(first: Dict, second: Dict) -> np.ndarray:
    """Principal angles between the relation spaces of two presentation records."""
    a, b = relation_matrix(first), relation_matrix(second)
    if a.shape[1] != b.shape[1]:
        raise DimensionMismatch(f"relation spaces live in dimensions {a.shape[1]} and {b.shape[1]}")
    if a.shape[0] == 0 or b.shape[0] == 0:
        return np.zeros(0)
    return subspace_angles(a.T, b.T)


def max_relation_angle(first: Dict, second: Dict) -> Optional[float]:
    angles = relation_space_angles(first, second)
    return float(np.max(angles)) if angles.size else 0.0
