"""
Characteristic Variety Sampler
Bilinear forms of the Hermitian relations, rank of M(u), the sigma correspondence and orbit checks
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..errors import DimensionMismatch, InvariantViolation
from .s3 import CYCLIC, PhiParams, grid_to_numpy, hermitian_relations, multilinearize

logger = logging.getLogger(__name__)

DEFAULT_RANK_TOL = 1e-8
RESIDUAL_TOL = 1e-10
PARALLEL_TOL = 1e-10

PhiLike = Union[PhiParams, Sequence[float]]


@dataclass
class BilinearSystem:
    """Six 4x4 matrices B_i; f_i(u, v) = u^T B_i v."""
    matrices: np.ndarray
    phi: Tuple[float, float, float] = (0.0, 0.0, 0.0)

    def __post_init__(self):
        self.matrices = np.asarray(self.matrices, dtype=complex)
        if self.matrices.shape != (6, 4, 4):
            raise DimensionMismatch(f"expected six 4x4 matrices, got shape {self.matrices.shape}")

    def matrix_at(self, u: np.ndarray) -> np.ndarray:
        """M(u), the 6x4 matrix with rows u^T B_i."""
        return np.einsum('m,imn->in', np.asarray(u, dtype=complex), self.matrices)

    def evaluate(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        return self.matrix_at(u) @ np.asarray(v, dtype=complex)

    def residual(self, u: np.ndarray, v: np.ndarray) -> float:
        """max_i |f_i(u, v)| for u, v scaled to unit norm."""
        u = np.asarray(u, dtype=complex)
        v = np.asarray(v, dtype=complex)
        return float(np.max(np.abs(self.evaluate(u / np.linalg.norm(u), v / np.linalg.norm(v)))))


def numeric_bilinear_matrices(phi: Sequence[float]) -> np.ndarray:
    """Closed-form coefficient matrices for real phi (turns)."""
    matrices = np.zeros((6, 4, 4), dtype=complex)
    for row, (k, l, m) in enumerate(CYCLIC):
        c = np.cos(np.pi * phi[k - 1])
        s = np.sin(np.pi * phi[k - 1])
        cc = np.cos(np.pi * (phi[l - 1] - phi[m - 1]))
        ss = np.sin(np.pi * (phi[l - 1] - phi[m - 1]))
        first = matrices[row]
        first[0, k], first[k, 0] = c, -c
        first[l, m] = first[m, l] = -1j * ss
        second = matrices[row + 3]
        second[l, m], second[m, l] = cc, -cc
        second[0, k] = second[k, 0] = 1j * s
    return matrices


def build_bilinear_system(phi: PhiLike) -> BilinearSystem:
    """
    Assemble the six bilinear forms.

    Rational PhiParams go through the exact relations and their multilinearization;
    a plain float triple uses the closed-form matrices.
    """
    if isinstance(phi, PhiParams):
        relations = hermitian_relations(phi)
        matrices = np.array([grid_to_numpy(multilinearize(rel)) for rel in relations.relations])
        return BilinearSystem(matrices, phi.as_floats())
    values = tuple(float(p) for p in phi)
    if len(values) != 3:
        raise DimensionMismatch(f"phi needs three components, got {len(values)}")
    return BilinearSystem(numeric_bilinear_matrices(values), values)


def _system(phi_or_system: Union[BilinearSystem, PhiLike]) -> BilinearSystem:
    if isinstance(phi_or_system, BilinearSystem):
        return phi_or_system
    return build_bilinear_system(phi_or_system)


def _check_point(u: np.ndarray) -> np.ndarray:
    u = np.asarray(u, dtype=complex)
    if u.shape != (4,):
        raise DimensionMismatch(f"points of P^3 have four coordinates, got shape {u.shape}")
    if not np.any(u):
        raise InvariantViolation("the zero vector is not a point of P^3")
    return u


def projective_normalize(u: np.ndarray) -> np.ndarray:
    """Scale so the coordinate of largest modulus equals one."""
    u = np.asarray(u, dtype=complex)
    return u / u[int(np.argmax(np.abs(u)))]


def singular_values(system: BilinearSystem, u: np.ndarray) -> np.ndarray:
    u = _check_point(u)
    return np.linalg.svd(system.matrix_at(u / np.linalg.norm(u)), compute_uv=False)


def char_variety_rank(u: np.ndarray, phi: Union[BilinearSystem, PhiLike], tol: float = DEFAULT_RANK_TOL) -> int:
    """Numerical rank of M(u): singular values above tol * sigma_max."""
    s = singular_values(_system(phi), u)
    if s[0] == 0:
        return 0
    return int(np.sum(s > tol * s[0]))


def rank_defect(system: BilinearSystem, u: np.ndarray) -> float:
    """sigma_4 / sigma_1 of M(u); zero exactly on the rank <= 3 locus."""
    s = singular_values(system, u)
    return float(s[3] / s[0]) if s[0] else 0.0


def sigma_map(u: np.ndarray, phi: Union[BilinearSystem, PhiLike], tol: float = DEFAULT_RANK_TOL) -> Optional[np.ndarray]:
    """The null vector v of M(u) when the rank is exactly three, else None."""
    system = _system(phi)
    u = _check_point(u)
    matrix = system.matrix_at(u / np.linalg.norm(u))
    _, s, vh = np.linalg.svd(matrix)
    rank = int(np.sum(s > tol * s[0])) if s[0] else 0
    if rank != 3:
        return None
    return projective_normalize(vh[-1].conj())


def is_parallel(u: np.ndarray, v: np.ndarray, tol: float = PARALLEL_TOL) -> bool:
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    overlap = abs(np.vdot(u, v)) / (np.linalg.norm(u) * np.linalg.norm(v))
    return bool(1.0 - overlap < tol)


@dataclass
class OrbitReport:
    points: List[np.ndarray]
    max_rank_defect: float
    max_residual: float
    left_locus: bool
    fixed: bool

    def to_dict(self) -> Dict:
        return {
            'steps': len(self.points) - 1,
            'max_rank_defect': self.max_rank_defect,
            'max_residual': self.max_residual,
            'left_locus': self.left_locus,
            'fixed': self.fixed,
        }


def sigma_orbit_check(u0: np.ndarray, phi: Union[BilinearSystem, PhiLike], steps: int = 5,
                      tol: float = DEFAULT_RANK_TOL) -> OrbitReport:
    """
    Iterate u -> sigma(u) and record how far each iterate is from the rank <= 3 locus.

    An iterate where sigma is undefined ends the orbit and sets left_locus; this is
    reported, not raised.
    """
    system = _system(phi)
    u = projective_normalize(_check_point(u0))
    points = [u]
    worst_defect = rank_defect(system, u)
    worst_residual = 0.0
    left_locus = False
    fixed = False
    for step in range(steps):
        v = sigma_map(u, system, tol)
        if v is None:
            left_locus = True
            logger.warning(f"orbit left the rank-3 locus at step {step}")
            break
        worst_residual = max(worst_residual, system.residual(u, v))
        if step == 0:
            fixed = is_parallel(u, v)
        worst_defect = max(worst_defect, rank_defect(system, v))
        points.append(v)
        u = v
    return OrbitReport(points, worst_defect, worst_residual, left_locus, fixed)


def left_action_points(phi: Union[BilinearSystem, PhiLike], tol: float = DEFAULT_RANK_TOL) -> List[Dict]:
    """The coordinate points e_0..e_3: rank of M(e_mu) and whether sigma fixes them."""
    system = _system(phi)
    report = []
    for mu in range(4):
        e = np.zeros(4, dtype=complex)
        e[mu] = 1.0
        v = sigma_map(e, system, tol)
        report.append({
            'index': mu,
            'rank': char_variety_rank(e, system, tol),
            'fixed': v is not None and is_parallel(e, v),
        })
    return report


def _random_complex(rng: np.random.Generator, size: int) -> np.ndarray:
    return rng.standard_normal(size) + 1j * rng.standard_normal(size)


def sample_random(phi: Union[BilinearSystem, PhiLike], count: int, rng: np.random.Generator,
                  tol: float = DEFAULT_RANK_TOL) -> List[Dict]:
    """Rank of M(u) at random points; generic points have rank four."""
    system = _system(phi)
    rows = []
    for _ in range(count):
        u = _random_complex(rng, 4)
        rows.append(_row('random', u, None, system, tol))
    return rows


def _minor_roots(system: BilinearSystem, base: np.ndarray, direction: np.ndarray, rows: Sequence[int]) -> np.ndarray:
    """Roots in t of det of the chosen 4x4 minor of M(base + t direction); the determinant is quartic in t."""
    ts = np.arange(-2.0, 3.0)
    values = [np.linalg.det(system.matrix_at(base + t * direction)[list(rows)]) for t in ts]
    coefficients = np.linalg.solve(np.vander(ts, 5), np.array(values))
    if np.allclose(coefficients, 0):
        return np.zeros(0)
    return np.roots(coefficients)


def project_to_locus(system: BilinearSystem, u: np.ndarray, iterations: int = 60) -> Tuple[np.ndarray, np.ndarray, float]:
    """Damped Gauss-Newton on f_i(u, v) = 0 with affine charts a.u = 1 and b.v = 1."""
    u = np.asarray(u, dtype=complex) / np.linalg.norm(u)
    _, _, vh = np.linalg.svd(system.matrix_at(u))
    v = vh[-1].conj()
    a = u.conj()
    b = v.conj() / np.vdot(v, v).real

    def residual_vector(uu, vv):
        return np.concatenate([system.evaluate(uu, vv), [a @ uu - 1.0, b @ vv - 1.0]])

    current = residual_vector(u, v)
    for _ in range(iterations):
        norm = np.linalg.norm(current)
        if norm < 1e-14:
            break
        jac_u = np.einsum('imn,n->im', system.matrices, v)
        jac_v = np.einsum('m,imn->in', u, system.matrices)
        jacobian = np.zeros((8, 8), dtype=complex)
        jacobian[:6, :4] = jac_u
        jacobian[:6, 4:] = jac_v
        jacobian[6, :4] = a
        jacobian[7, 4:] = b
        step = np.linalg.lstsq(jacobian, -current, rcond=None)[0]
        scale = 1.0
        while scale > 1e-4:
            trial_u, trial_v = u + scale * step[:4], v + scale * step[4:]
            trial = residual_vector(trial_u, trial_v)
            if np.linalg.norm(trial) < norm:
                u, v, current = trial_u, trial_v, trial
                break
            scale /= 2
        else:
            break
    return u, v, system.residual(u, v)


def line_search(phi: Union[BilinearSystem, PhiLike], count: int, rng: np.random.Generator,
                tol: float = DEFAULT_RANK_TOL, max_lines: int = 50) -> List[Dict]:
    """
    Points of the rank <= 3 locus from random projective lines.

    Each line contributes the roots of one 4x4 minor of M(u) as seeds, which are then
    projected onto the locus; a seed is kept when sigma_4/sigma_1 < tol and the
    bilinear residual is below 1e-10.
    """
    system = _system(phi)
    found: List[Dict] = []
    for line in range(max_lines):
        if len(found) >= count:
            break
        base, direction = _random_complex(rng, 4), _random_complex(rng, 4)
        rows = sorted(rng.choice(6, size=4, replace=False).tolist())
        for t in _minor_roots(system, base, direction, rows):
            seed = base + t * direction
            if not np.all(np.isfinite(seed)) or not np.any(seed):
                continue
            u, v, residual = project_to_locus(system, seed)
            if residual < RESIDUAL_TOL and rank_defect(system, u) < tol:
                found.append(_row('line', u, v, system, tol))
                if len(found) >= count:
                    break
    if len(found) < count:
        logger.warning(f"line search found {len(found)} of {count} requested points in {max_lines} lines")
    logger.info(f"line search at phi={system.phi}: {len(found)} points")
    return found


def _row(mode: str, u: np.ndarray, v: Optional[np.ndarray], system: BilinearSystem, tol: float) -> Dict:
    u = projective_normalize(u)
    if v is None:
        v = sigma_map(u, system, tol)
    row = {
        'mode': mode,
        'u': u,
        'rank': char_variety_rank(u, system, tol),
        'sigma_min': rank_defect(system, u),
        'residual': system.residual(u, v) if v is not None else None,
        'v': projective_normalize(v) if v is not None else None,
    }
    return row


CSV_COLUMNS = ['index', 'mode'] + [f"u{mu}_{part}" for mu in range(4) for part in ('re', 'im')] + [
    'rank', 'sigma_min', 'residual'] + [f"v{mu}_{part}" for mu in range(4) for part in ('re', 'im')]


def sampler_rows_for_csv(rows: Sequence[Dict]) -> List[List[str]]:
    out = []
    for index, row in enumerate(rows):
        line = [str(index), row['mode']]
        line += [repr(float(part)) for z in row['u'] for part in (z.real, z.imag)]
        line += [str(row['rank']), repr(row['sigma_min']), '' if row['residual'] is None else repr(row['residual'])]
        if row['v'] is None:
            line += [''] * 8
        else:
            line += [repr(float(part)) for z in row['v'] for part in (z.real, z.imag)]
        out.append(line)
    return out
