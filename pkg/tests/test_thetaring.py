from fractions import Fraction

import mpmath
import numpy as np
import pytest

from ncgkit.errors import DegreeError, DivergentNomeError, ParameterDomainError
from ncgkit.nctorus import QuadIrr, SL2Mat
from ncgkit.thetaring import (
    GradedRing,
    ThetaChar,
    associativity_defect,
    classify_poli2,
    index_congruence,
    kernel_from_matrix,
    max_relation_angle,
    presentation_export,
    quadratic_kernel,
    rank_plateau,
    reduce_characteristic,
    struct_constant_by_window,
    struct_constants,
    theta_const,
    theta_symmetry_check,
)
from ncgkit.thetaring.presentation import relation_matrix
from ncgkit.thetaring.theta import _theta_series


def test_characteristic_is_reduced():
    assert reduce_characteristic(Fraction(3, 2)) == Fraction(1, 2)
    assert reduce_characteristic(Fraction(-1, 2)) == Fraction(1, 2)
    assert reduce_characteristic(Fraction(7, 3)) == Fraction(1, 3)
    assert ThetaChar(Fraction(1)) == ThetaChar(Fraction(0))
    with pytest.raises(ParameterDomainError):
        ThetaChar(Fraction(0), Fraction(0))


def test_theta_oracle_at_nome_e_minus_pi():
    value = theta_const(ThetaChar(Fraction(0)), (0, 1), 1e-12)
    expected = mpmath.pi ** mpmath.mpf(0.25) / mpmath.gamma(mpmath.mpf(0.75))
    assert value.err <= 1e-12
    assert abs(value.value - expected) <= 1e-12
    assert value.format(1e-12) == '1.086434811213308 ± 1e-12'


def test_divergent_nome():
    with pytest.raises(DivergentNomeError) as info:
        theta_const(ThetaChar(Fraction(0)), (0, 0))
    assert info.value.message == 'divergent nome'
    with pytest.raises(DivergentNomeError):
        theta_const(ThetaChar(Fraction(1, 3)), (Fraction(1, 2), Fraction(-1)))


def test_theta_symmetries():
    result = theta_symmetry_check(ThetaChar(Fraction(1, 3), Fraction(2)), (Fraction(1, 5), Fraction(4, 5)))
    assert result['ok']


def test_unreduced_series_matches_reduced_characteristic():
    tau = (Fraction(1, 5), Fraction(4, 5))
    reduced = theta_const(ThetaChar(Fraction(1, 3), Fraction(2)), tau, 1e-12)
    unreduced = _theta_series(Fraction(4, 3), Fraction(2), tau, 1e-12)
    assert unreduced.radius >= 3
    assert abs(reduced.value - unreduced.value) <= 2e-12
    other = _theta_series(Fraction(5, 6), Fraction(2), tau, 1e-12)
    assert abs(reduced.value - other.value) > 1e-3


def test_symmetry_check_sums_the_shifted_window():
    result = theta_symmetry_check(ThetaChar(Fraction(1, 3), Fraction(2)), (Fraction(1, 5), Fraction(4, 5)))
    assert result['shift_radius'] >= 3
    assert result['shift_defect'] <= 2e-12
    assert result['reflect_defect'] <= 2e-12


@pytest.mark.slow
def test_theta_symmetries_over_random_characteristics(rng):
    for _ in range(100):
        ch = ThetaChar(Fraction(rng.randint(-24, 24), rng.randint(1, 12)), Fraction(rng.randint(1, 8), rng.randint(1, 4)))
        tau = (Fraction(rng.randint(-4, 4), 5), Fraction(rng.randint(2, 10), 5))
        result = theta_symmetry_check(ch, tau, 1e-12)
        assert result['ok'], (ch, tau)


def test_index_congruence_consistency():
    g = SL2Mat(1, 0, 1, 1)
    cls = index_congruence(g, g, 1, 1, 1)
    assert cls is not None and 0 <= cls.residue < cls.modulus
    with pytest.raises(DegreeError):
        index_congruence(SL2Mat.identity(), g, 1, 1, 1)


def test_structure_constants_match_direct_sums():
    g = SL2Mat(1, 0, 1, 1)
    tau = (Fraction(0), Fraction(-1))
    tensor = struct_constants(g, g, None, tau, 1e-12, 128)
    assert tensor.dims == (2, 1, 1)
    for gamma, alpha, beta, value, err in tensor.rows():
        direct = struct_constant_by_window(g, g, tau, alpha, beta, gamma, window=60)
        assert abs(value - direct) <= 1e-12
        assert err <= 1e-12


def test_structure_constants_need_lower_half_plane():
    g = SL2Mat(1, 0, 1, 1)
    with pytest.raises(ParameterDomainError):
        struct_constants(g, g, None, (Fraction(0), Fraction(1)))


def test_ring_rejects_bad_input(golden, rm_matrix, rm_theta, rm_tau):
    with pytest.raises(DegreeError):
        GradedRing(SL2Mat.identity(), rm_theta, rm_tau)
    with pytest.raises(ParameterDomainError):
        GradedRing(rm_matrix, golden, rm_tau)
    with pytest.raises(ParameterDomainError):
        GradedRing(rm_matrix, rm_theta, (Fraction(0), Fraction(1)))


@pytest.mark.parametrize('g, label', [
    (SL2Mat(4, -1, 5, -1), 'koszul'),
    (SL2Mat(2, 1, 7, 4), 'quadratic'),
    (SL2Mat(2, 1, 5, 3), 'generated-in-degree-1'),
    (SL2Mat(2, 1, 1, 1), 'outside'),
    (SL2Mat(0, -1, 1, 0), 'outside'),
])
def test_classification(g, label):
    assert classify_poli2(g) == label


def test_no_presentation_below_quadratic():
    ring = GradedRing(SL2Mat(2, 1, 5, 3), QuadIrr(-1, 1, 10, 21), (Fraction(0), Fraction(-1)))
    with pytest.raises(ParameterDomainError):
        presentation_export(ring, 1e-12, 1e-8)


def test_kernel_of_a_rank_one_matrix():
    matrix = np.array([[1.0, 1.0], [2.0, 2.0]], dtype=complex)
    result = kernel_from_matrix(matrix, 1e-8)
    assert result.rank == 1
    assert result.kernel_dim == 1
    assert np.allclose(matrix @ result.basis[0], 0)


def test_rank_plateau():
    stable = rank_plateau(np.diag([1.0, 1e-3, 1e-12]))
    assert stable['stable'] and stable['rank'] == 2
    unstable = rank_plateau(np.diag([1.0, 1e-8]))
    assert not unstable['stable'] and unstable['rank'] is None


def test_ring_dimensions(rm_matrix, rm_theta, rm_tau):
    ring = GradedRing(rm_matrix, rm_theta, rm_tau)
    assert [ring.dim(n) for n in (1, 2, 3)] == [5, 15, 40]
    with pytest.raises(DegreeError):
        ring.dim(0)


@pytest.mark.slow
def test_rm_ring_quadratic_relations(rm_matrix, rm_theta, rm_tau):
    ring = GradedRing(rm_matrix, rm_theta, rm_tau)
    assert ring.table(1, 1).dims == (15, 5, 5)
    kernel = quadratic_kernel(ring)
    assert kernel.rank == 15
    assert kernel.kernel_dim == 10

    record = presentation_export(ring, 1e-12, 1e-8, seed=3)
    assert record['generators'] == ['x1', 'x2', 'x3', 'x4', 'x5']
    assert len(record['relations']) == 10
    assert record['classification'] == 'koszul'
    assert record['provenance']['seed'] == 3
    assert relation_matrix(record).shape == (10, 25)
    assert max_relation_angle(record, record) < 1e-6


@pytest.mark.slow
def test_rm_ring_is_associative(rm_matrix, rm_theta, rm_tau):
    report = associativity_defect(GradedRing(rm_matrix, rm_theta, rm_tau), 1, 1, 1)
    assert report.triples == 125
    assert report.defect <= 1e-9
    assert report.within_bound
