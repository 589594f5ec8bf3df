from fractions import Fraction

import numpy as np
import pytest

from ncgkit.errors import DegreeError, InvariantViolation
from ncgkit.freealg import FreeElement, same_span
from ncgkit.spheres import (
    LambdaMat,
    PauliBasis,
    PhiParams,
    QuadraticRelationSet,
    build_bilinear_system,
    ch12_closed_form,
    ch12_tensor,
    char_variety_rank,
    commutative_ch32,
    hermitian_relations,
    hermitian_substitution,
    left_action_points,
    line_search,
    multilinearize,
    r4_relations,
    s2_ch1_check,
    s2_projector,
    s3_relations,
    s4_algebra,
    s4_projector,
    sample_random,
    sampler_rows_for_csv,
    sigma_map,
    sigma_orbit_check,
    swap_phases,
    unitarity_expansion,
    unitary_matrix,
    verify_projector,
    verify_s4_projector,
)
from ncgkit.spheres.charvar import CSV_COLUMNS, is_parallel
from ncgkit.spheres.s3 import x_table

GENERIC_PHI = PhiParams((Fraction(1, 7), Fraction(2, 5), Fraction(3, 11)))


# two-sphere

def test_s2_projector():
    assert verify_projector(s2_projector()) == {'idempotent': True, 'selfadjoint': True, 'ch0_zero': True}


def test_s2_ch1_is_volume_form():
    assert s2_ch1_check(s2_projector())


# four-sphere

def test_s4_relations_hold():
    algebra = s4_algebra(Fraction(1, 3))
    assert all(algebra.relations_hold().values())
    assert algebra.rewrite_system.check_local_confluence() == []


def test_s4_projector():
    algebra = s4_algebra(Fraction(1, 3))
    checks = verify_s4_projector(algebra, s4_projector(algebra))
    assert checks == {'idempotent': True, 'selfadjoint': True, 'ch0_zero': True, 'ch1_zero': True}


def test_s4_projector_needs_half_scale():
    algebra = s4_algebra(Fraction(1, 3))
    assert not verify_s4_projector(algebra, s4_projector(algebra, Fraction(1)))['idempotent']


def test_s4_swap_phases_are_unimodular():
    phases = swap_phases(s4_algebra(Fraction(2, 5)))
    assert len(phases) == 10
    assert all(phase.is_unimodular_monomial() for phase in phases)


# three-sphere

def test_lambda_validation():
    with pytest.raises(InvariantViolation, match='not unitary'):
        LambdaMat([[2, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    with pytest.raises(InvariantViolation, match='not symmetric'):
        LambdaMat.monomial([1, 2, 0, 3], [0, 0, 0, 0])
    assert not LambdaMat.monomial([1, 2, 0, 3], [0, 0, 0, 0], require_symmetric=False).is_symmetric()


def test_pauli_basis_is_orthonormal():
    assert PauliBasis.is_orthonormal()


def test_ch12_vanishes_for_symmetric_lambda(rng):
    assert ch12_tensor(LambdaMat.identity()).is_zero()
    for _ in range(3):
        assert ch12_tensor(LambdaMat.from_phi(PhiParams.random(rng))).is_zero()
        assert ch12_tensor(LambdaMat.random_symmetric(rng)).is_zero()


def test_ch12_closed_form_for_nonsymmetric_lambda(rng):
    for _ in range(3):
        lam = LambdaMat.random_nonsymmetric(rng)
        tensor = ch12_tensor(lam)
        assert not tensor.is_zero()
        assert tensor == ch12_closed_form(lam)


def test_commutative_limit_keeps_ch32():
    assert not commutative_ch32(LambdaMat.identity()).is_zero()


def test_unitary_matrix_needs_nonzero_scale():
    with pytest.raises(InvariantViolation):
        unitary_matrix(LambdaMat.identity(), 0)


def test_relation_labels_and_sign():
    relations = r4_relations(LambdaMat.identity())
    assert relations.labels == [f"left-unitarity[{k}]" for k in (1, 2, 3)] + [
        f"right-unitarity[{k}]" for k in (1, 2, 3)]
    with pytest.raises(InvariantViolation):
        r4_relations(LambdaMat.identity(), epsilon_sign=2)
    assert s3_relations(LambdaMat.identity()).sphere is not None


def test_unitarity_components_span_relations(rng):
    for _ in range(3):
        lam = LambdaMat.from_phi(PhiParams.random(rng))
        relations = r4_relations(lam, fold=False)
        uu, u_u = unitarity_expansion(lam)
        assert same_span(uu, relations.relations[:3])
        assert same_span(u_u, relations.relations[3:])


def test_hermitian_form_of_relations(rng):
    for _ in range(3):
        phi = PhiParams.random(rng)
        assert same_span(hermitian_substitution(phi).relations, hermitian_relations(phi).relations)


def test_quadratic_relation_sets_are_homogeneous():
    with pytest.raises(DegreeError):
        QuadraticRelationSet(x_table(), ['linear'], [FreeElement.gen(0)])
    with pytest.raises(DegreeError):
        multilinearize(FreeElement.gen(0) + FreeElement.word((0, 1)))


def test_phi_is_reduced_mod_one():
    assert PhiParams((Fraction(5, 4), 0, -1)).phi == (Fraction(1, 4), 0, 0)


# characteristic variety

def test_exact_and_closed_form_systems_agree():
    exact = build_bilinear_system(GENERIC_PHI)
    numeric = build_bilinear_system(GENERIC_PHI.as_floats())
    assert np.allclose(exact.matrices, numeric.matrices)


def test_sigma_is_identity_at_zero_phi(np_rng):
    system = build_bilinear_system(PhiParams((0, 0, 0)))
    for _ in range(10):
        u = np_rng.standard_normal(4) + 1j * np_rng.standard_normal(4)
        assert char_variety_rank(u, system) <= 3
        v = sigma_map(u, system)
        assert v is not None and is_parallel(u, v, 1e-9)
        assert system.residual(u, v) < 1e-10


def test_generic_points_have_full_rank(np_rng):
    system = build_bilinear_system(GENERIC_PHI)
    rows = sample_random(system, 20, np_rng)
    assert all(row['rank'] == 4 and row['v'] is None and row['residual'] is None for row in rows)


def test_coordinate_points_are_fixed():
    for point in left_action_points(GENERIC_PHI):
        assert point['rank'] == 3
        assert point['fixed']


def test_zero_vector_is_rejected():
    with pytest.raises(InvariantViolation):
        char_variety_rank(np.zeros(4), GENERIC_PHI)


def test_orbit_at_zero_phi_is_fixed():
    report = sigma_orbit_check(np.array([1, 2j, -1, 0.5]), PhiParams((0, 0, 0)), steps=3)
    assert report.fixed
    assert not report.left_locus
    assert len(report.points) == 4
    assert report.to_dict()['steps'] == 3


def test_csv_rows_match_columns(np_rng):
    rows = sample_random(GENERIC_PHI, 3, np_rng)
    lines = sampler_rows_for_csv(rows)
    assert len(lines) == 3
    assert all(len(line) == len(CSV_COLUMNS) for line in lines)
    assert [line[0] for line in lines] == ['0', '1', '2']


@pytest.mark.slow
def test_line_search_points_lie_on_locus(np_rng):
    system = build_bilinear_system(GENERIC_PHI)
    rows = line_search(system, 3, np_rng)
    assert len(rows) >= 3
    for row in rows:
        assert row['mode'] == 'line'
        assert row['rank'] == 3
        assert row['residual'] < 1e-10
        orbit = sigma_orbit_check(row['u'], system, steps=5)
        assert not orbit.left_locus
        assert orbit.max_residual < 1e-8
