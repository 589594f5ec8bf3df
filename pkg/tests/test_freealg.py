from fractions import Fraction

import mpmath
import pytest

from ncgkit.errors import (
    DimensionMismatch,
    InvariantViolation,
    ParameterDomainError,
    RewriteBudgetExceeded,
    RuleOrderError,
)
from ncgkit.freealg import (
    AlgMatrix,
    FreeElement,
    GeneratorTable,
    RewriteSystem,
    TensorElement,
    UniScalar,
    chern_even,
    chern_odd,
    exact_rank,
    same_span,
    tensor_is_zero,
    theta_phase,
)
from ncgkit.nctorus import torus_rewrite_system


def test_half_turn_is_minus_one():
    assert UniScalar.phase(Fraction(1, 2)) == -1
    assert UniScalar.i() * UniScalar.i() == -1


def test_cube_roots_of_unity_sum_to_zero():
    total = UniScalar.one() + UniScalar.phase(Fraction(1, 3)) + UniScalar.phase(Fraction(2, 3))
    assert total.is_zero()
    assert not (UniScalar.one() + UniScalar.phase(Fraction(1, 3))).is_zero()


def test_star_is_inverse_on_phases():
    w = UniScalar.phase(Fraction(1, 5), 2)
    assert w * w.star() == 1


def test_theta_phase_rational_and_formal(golden):
    assert theta_phase(Fraction(1, 3), 2) == UniScalar.phase(Fraction(2, 3))
    formal = theta_phase(golden, 1)
    assert list(formal.terms) == [(Fraction(0), Fraction(1))]
    with pytest.raises(ParameterDomainError):
        formal.to_complex()
    value = formal.to_complex(golden.to_mpf())
    assert abs(value - mpmath.expjpi(2 * golden.to_mpf())) < mpmath.mpf(10) ** -30


def test_generator_table_rejects_non_involution():
    with pytest.raises(InvariantViolation):
        GeneratorTable(('a', 'b'), (1, 1), (0, 1))
    with pytest.raises(InvariantViolation):
        GeneratorTable(('a', 'a'), (0, 1), (0, 1))


def test_star_reverses_words():
    table = GeneratorTable.build(['u', 'u*', 'v'], pairs=[('u', 'u*')])
    x = FreeElement.word((0, 2), UniScalar.i())
    assert x.star(table) == FreeElement.word((2, 1), -UniScalar.i())


def test_torus_swap_normal_form(golden):
    rs = torus_rewrite_system(golden)
    U, Us, V, Vs = range(4)
    assert rs.normal_form(FreeElement.word((V, U))) == FreeElement.word((U, V), theta_phase(golden, -1))
    assert rs.normal_form(FreeElement.word((U, V, Vs, Us))) == FreeElement.unit()
    assert rs.is_irreducible((U, U, V))


def test_torus_rewrite_system_is_confluent(golden):
    assert torus_rewrite_system(golden).check_local_confluence() == []
    assert torus_rewrite_system(Fraction(2, 7)).check_local_confluence() == []


def test_unresolved_critical_pair_is_reported():
    table = GeneratorTable.build(['x', 'y'])
    rs = RewriteSystem(table, {(1, 0): UniScalar.i()}, [((1, 1), FreeElement.unit())], name='broken')
    pairs = rs.check_local_confluence()
    assert pairs
    assert 'swap(y,x)' in pairs[0].describe(table) or 'swap(y,x)' in pairs[0].rules


def test_rule_order_is_enforced():
    table = GeneratorTable.build(['U', 'U*', 'V', 'V*'], pairs=[('U', 'U*'), ('V', 'V*')])
    with pytest.raises(RuleOrderError):
        RewriteSystem(table, {(0, 2): UniScalar.one()})
    with pytest.raises(RuleOrderError):
        RewriteSystem(table, substitutions=[((0,), FreeElement.gen(2))])
    with pytest.raises(InvariantViolation):
        RewriteSystem(table, {(2, 0): UniScalar.rational(2)})


def test_rewrite_budget(golden):
    base = torus_rewrite_system(golden)
    rs = RewriteSystem(base.table, {(2, 0): theta_phase(golden, -1)}, budget=1)
    with pytest.raises(RewriteBudgetExceeded):
        rs.normal_form(FreeElement.word((2, 2, 0)))


def test_reduction_cache_is_bounded():
    table = GeneratorTable.build(['x', 'y'])
    rs = RewriteSystem(table, {(1, 0): UniScalar.i()}, cache_size=4)
    for k in range(1, 7):
        rs.normal_form(FreeElement.word((1,) * k + (0,)))
    info = rs.cache_info()
    assert info.maxsize == 4
    assert info.currsize == 4
    assert rs.normal_form(FreeElement.word((1, 0))) == FreeElement.word((0, 1), UniScalar.i())


def test_budget_failure_is_not_cached(golden):
    base = torus_rewrite_system(golden)
    rs = RewriteSystem(base.table, {(2, 0): theta_phase(golden, -1)}, budget=1)
    for _ in range(2):
        with pytest.raises(RewriteBudgetExceeded):
            rs.normal_form(FreeElement.word((2, 2, 0)))
    assert rs.cache_info().currsize == 0


def test_exact_rank_and_span():
    x, y = FreeElement.gen(0), FreeElement.gen(1)
    assert exact_rank([x, x * 2, y]) == 2
    w = UniScalar.phase(Fraction(1, 3))
    assert exact_rank([x + y * w, x * w.star() + y]) == 1
    assert same_span([x, y], [x + y, x - y])
    assert not same_span([x], [y])


def test_tensor_drops_units_outside_first_slot():
    assert TensorElement(2, {((0,), ()): 1}).is_zero()
    assert not TensorElement(2, {((), (0,)): 1}).is_zero()
    with pytest.raises(DimensionMismatch):
        TensorElement(2, {((0,),): 1})


def test_chern_characters_of_scalars_and_unitaries(golden):
    rs = torus_rewrite_system(golden)
    table = rs.table
    ch0 = chern_even(AlgMatrix.identity(1, table), 0)
    assert ch0.coefficient([()]) == Fraction(1, 2)

    U, Us = 0, 1
    u = AlgMatrix([[FreeElement.gen(U)]], table)
    expected = TensorElement(2, {((U,), (Us,)): 1, ((Us,), (U,)): -1})
    assert chern_odd(u, 0) == expected
    assert not tensor_is_zero(chern_odd(u, 0), rs)
    with pytest.raises(DimensionMismatch):
        chern_even(u, -1)


def test_matrix_adjoint_and_product(golden):
    rs = torus_rewrite_system(golden)
    u = AlgMatrix([[FreeElement.gen(0), FreeElement.zero()], [FreeElement.zero(), FreeElement.gen(2)]], rs.table)
    assert u.matmul(u.adjoint(), rs).equals(AlgMatrix.identity(2, rs.table), rs)
