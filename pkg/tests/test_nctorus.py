from fractions import Fraction

import mpmath
import pytest

from ncgkit.errors import InvariantViolation, ParameterDomainError, PoleError
from ncgkit.freealg import theta_phase
from ncgkit.nctorus import (
    ComplexStructure,
    QuadIrr,
    QuadraticNumber,
    SL2Mat,
    TorusElement,
    canonicalize_theta,
    delta,
    delta_tau_leibniz_defect,
    fixing_matrices,
    is_fixed,
    leibniz_defect,
    module_rank,
    morita_theta,
    tensor_degree_check,
    torus_mul,
    trace_chi,
)
from ncgkit.nctorus.torus import random_element


def test_commutation_relation(golden):
    U, V = TorusElement.U(), TorusElement.V()
    assert torus_mul(U, V, golden) == torus_mul(V, U, golden).scale(theta_phase(golden, 1))


def test_product_is_associative(rng, golden):
    for _ in range(10):
        x, y, z = (random_element(rng, terms=8, radius=2) for _ in range(3))
        assert torus_mul(torus_mul(x, y, golden), z, golden) == torus_mul(x, torus_mul(y, z, golden), golden)


@pytest.mark.slow
def test_product_is_associative_on_twenty_term_elements(rng, golden):
    elements = [random_element(rng, terms=20, radius=2) for _ in range(100)]
    for k in range(100):
        x, y, z = elements[k], elements[(k + 1) % 100], elements[(k + 2) % 100]
        assert torus_mul(torus_mul(x, y, golden), z, golden) == torus_mul(x, torus_mul(y, z, golden), golden)
        assert trace_chi(torus_mul(x, y, golden)) == trace_chi(torus_mul(y, x, golden))


def test_trace_is_cyclic(rng, golden):
    for _ in range(10):
        x, y = random_element(rng), random_element(rng)
        assert trace_chi(torus_mul(x, y, golden)) == trace_chi(torus_mul(y, x, golden))


def test_rational_theta_trace(rng):
    theta = Fraction(1, 5)
    for _ in range(5):
        x, y = random_element(rng, theta_formal=False), random_element(rng, theta_formal=False)
        assert trace_chi(torus_mul(x, y, theta)) == trace_chi(torus_mul(y, x, theta))


def test_derivations_are_exact(rng, golden):
    for _ in range(5):
        x, y = random_element(rng, terms=10), random_element(rng, terms=10)
        assert leibniz_defect(1, x, y, golden).is_zero()
        assert leibniz_defect(2, x, y, golden).is_zero()


def test_delta_rejects_bad_index():
    with pytest.raises(ParameterDomainError):
        delta(3, TorusElement.U())


def test_twopi_tags_do_not_mix():
    with pytest.raises(InvariantViolation):
        TorusElement.one() + delta(1, TorusElement.U())


def test_delta_tau_is_a_derivation(rng, golden):
    tau = ComplexStructure.from_parts(Fraction(3, 10), Fraction(-1))
    x, y = random_element(rng, terms=6), random_element(rng, terms=6)
    assert delta_tau_leibniz_defect(tau, x, y, golden, 128) < mpmath.ldexp(1, -96)


def test_complex_structure_needs_lower_half_plane():
    with pytest.raises(ParameterDomainError):
        ComplexStructure.from_parts(0, 1)


def test_sl2_determinant():
    with pytest.raises(InvariantViolation):
        SL2Mat(1, 1, 1, 1)
    g = SL2Mat(4, -1, 5, -1)
    assert g @ g.inverse() == SL2Mat.identity()
    assert g.power(2) == SL2Mat(11, -3, 15, -4)


def test_quadratic_irrationality_canonical_form():
    assert QuadIrr(2, 2, 4, 5) == QuadIrr(1, 1, 2, 5)
    assert QuadIrr(1, 1, 1, 8) == QuadIrr(1, 2, 1, 2)
    with pytest.raises(ParameterDomainError):
        QuadIrr(0, 1, 1, 4)
    assert QuadIrr(5, -1, 10, 5).minimal_polynomial() == (5, -5, 1)


def test_exact_sign():
    assert QuadraticNumber(1, -1, 2) < 0
    assert QuadraticNumber(-7, 3, 5) < 0
    assert QuadraticNumber(-6, 3, 5) > 0


def test_morita_action(golden):
    assert morita_theta(SL2Mat(1, 1, 0, 1), golden) == QuadIrr(1, 1, 2, 5)
    assert morita_theta(SL2Mat(1, 0, 1, 1), Fraction(1, 2)) == Fraction(1, 3)
    with pytest.raises(PoleError):
        morita_theta(SL2Mat(0, -1, 1, 0), Fraction(0))


def test_fixing_matrices(golden, rm_matrix, rm_theta):
    assert is_fixed(rm_matrix, rm_theta)
    assert not is_fixed(rm_matrix, golden)
    found = fixing_matrices(golden, 2)
    assert len(found) == 6
    assert SL2Mat.identity() in found
    assert SL2Mat(1, 1, 1, 2) in found
    assert fixing_matrices(golden, 0) == [SL2Mat.identity()]


def test_tensor_degree_check():
    g = SL2Mat(1, 0, 1, 1)
    report = tensor_degree_check(g, g)
    assert report.deg12 == 2 and not report.violation
    assert tensor_degree_check(g, SL2Mat(-1, 0, 1, -1)).violation


def test_canonicalize_theta():
    value, moves = canonicalize_theta(QuadIrr(5, 1, 2, 5))
    assert value == QuadIrr(3, -1, 2, 5)
    assert moves == [((1, -3), (0, 1)), ((-1, 1), (0, 1))]


def test_module_rank(golden):
    assert module_rank(1, 1, golden) == QuadIrr(1, 1, 2, 5).value
    assert module_rank(-1, 1, golden) == QuadIrr(3, -1, 2, 5).value
