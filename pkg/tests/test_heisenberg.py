from fractions import Fraction

import pytest
import sympy

from ncgkit.errors import ClassCountMismatch, InvariantViolation, ParameterDomainError
from ncgkit.heisenberg import (
    STANDARD_MATRICES,
    GaussPolyPacket,
    ModuleParams,
    PacketTerm,
    act_right_word,
    bases1_defect,
    bimodule_commutation_check,
    holomorphic_basis,
    left_relation_check,
    nabla_z,
    nabla_z_shift_check,
    random_packet,
    random_word,
    right_module_law_check,
    right_relation_check,
)
from ncgkit.nctorus import SL2Mat

TAU = (Fraction(3, 10), Fraction(-1))


@pytest.mark.parametrize('c', sorted(STANDARD_MATRICES))
def test_right_and_left_relations(rng, golden, c):
    params = ModuleParams(STANDARD_MATRICES[c], golden)
    f = random_packet(rng, c)
    assert right_relation_check(f, params)
    assert left_relation_check(f, params)


@pytest.mark.parametrize('c', [1, 2])
def test_left_and_right_actions_commute(rng, golden, c):
    params = ModuleParams(STANDARD_MATRICES[c], golden)
    results = bimodule_commutation_check(random_packet(rng, c), params)
    assert set(results) == {"U'U", "U'V", "V'U", "V'V"}
    assert all(results.values())


def test_word_law_follows_normal_form(rng, golden):
    params = ModuleParams(STANDARD_MATRICES[2], golden)
    f = random_packet(rng, 2)
    for _ in range(3):
        assert right_module_law_check(f, params, random_word(rng, 4))
    assert right_module_law_check(f, params, ['V', 'U', 'U*', 'V*'])


def test_terms_merge_when_gamma_differs_by_pi_i():
    pi_i = sympy.pi * sympy.I
    kappa, beta = sympy.Integer(-1), sympy.Rational(1, 2)
    poly = (sympy.Integer(1), sympy.Integer(2))
    cancelled = GaussPolyPacket([[PacketTerm(poly, kappa, beta), PacketTerm(poly, kappa, beta, pi_i)]])
    assert cancelled.is_zero()
    doubled = GaussPolyPacket([[PacketTerm(poly, kappa, beta), PacketTerm(poly, kappa, beta, 2 * pi_i)]])
    assert len(doubled.classes[0]) == 1
    assert doubled.classes[0][0].poly == (2, 4)
    flipped = GaussPolyPacket([[PacketTerm((sympy.Integer(-1),), sympy.Integer(-1), sympy.Integer(0), 3 * pi_i)]])
    assert flipped.equals(GaussPolyPacket.gaussian(1))
    kept = GaussPolyPacket([[PacketTerm(poly, kappa, beta), PacketTerm(poly, kappa, beta, pi_i / 2)]])
    assert len(kept.classes[0]) == 2


def test_module_needs_positive_c(golden):
    with pytest.raises(ParameterDomainError):
        ModuleParams(SL2Mat(1, 0, 0, 1), golden)
    with pytest.raises(ParameterDomainError):
        ModuleParams(STANDARD_MATRICES[1], golden, tau=(Fraction(0), Fraction(1)))


def test_class_count_mismatch(rng, golden):
    params = ModuleParams(STANDARD_MATRICES[2], golden, tau=TAU)
    with pytest.raises(ClassCountMismatch):
        nabla_z(random_packet(rng, 3), params)


def test_unknown_letter(rng, golden):
    params = ModuleParams(STANDARD_MATRICES[1], golden)
    with pytest.raises(ParameterDomainError):
        act_right_word(random_packet(rng, 1), params, ['W'])


def test_packets_must_decay():
    with pytest.raises(InvariantViolation):
        GaussPolyPacket.gaussian(1, kappa=1)
    assert not GaussPolyPacket.gaussian(1, kappa=1, require_decay=False).decays()


@pytest.mark.parametrize('c', [1, 2, 3])
def test_holomorphic_basis_is_annihilated(golden, c):
    params = ModuleParams(STANDARD_MATRICES[c], golden, tau=TAU, z=(Fraction(1, 4), Fraction(-1, 3)))
    basis = holomorphic_basis(params)
    assert len(basis) == c
    for section in basis:
        assert section.decays()
        assert nabla_z(section, params).is_zero()


def test_holomorphic_basis_needs_positive_d(golden):
    params = ModuleParams(SL2Mat(1, -1, 1, 0), golden, tau=TAU)
    with pytest.raises(InvariantViolation):
        holomorphic_basis(params)


def test_nabla_shift_by_z(rng, golden):
    params = ModuleParams(STANDARD_MATRICES[1], golden, tau=TAU, z=(Fraction(1, 2), Fraction(0)))
    assert nabla_z_shift_check(random_packet(rng, 1), params)


def test_alternate_basis_report(golden):
    params = ModuleParams(STANDARD_MATRICES[2], golden, tau=TAU)
    report = bases1_defect(params)
    assert [entry['class'] for entry in report] == [0, 1]
    for entry in report:
        assert set(entry) == {'class', 'decays', 'annihilated', 'defect'}
        assert entry['defect']['c'] == 2
