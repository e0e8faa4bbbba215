from fractions import Fraction

import pytest

from coxdef.coxeter import CoxeterMatrix
from coxdef.cyclotomic import CyclotomicValue
from coxdef.errors import InvalidInputError
from coxdef.flatness import determinant_obstruction
from coxdef.linsolve import Equation, eliminate, express_in_span
from coxdef.quiver import (
    build_quiver,
    certificate_for,
    check_certificate,
    check_correction,
    deformation_system,
    first_order_deformation,
    generic_tau,
    mat_inverse,
    mat_mul,
    module_from_representation,
    regular_module,
    trivial_module,
    verify_module,
)

A222 = CoxeterMatrix.triangle(2, 2, 2)
A233 = CoxeterMatrix.triangle(2, 3, 3)


# --- linear algebra ------------------------------------------------------------

def test_eliminate_detects_inconsistency_with_certificate():
    eqs = [
        Equation({"x": Fraction(1), "y": Fraction(1)}, {"p": Fraction(1)}),
        Equation({"x": Fraction(2), "y": Fraction(2)}, {"q": Fraction(1)}),
    ]
    elim = eliminate(eqs)
    assert len(elim.obstructions) == 1
    ob = elim.obstructions[0]
    lhs, rhs = elim.residual(ob.combination)
    assert lhs == {} and rhs == ob.functional
    # feasible exactly when q = 2p
    assert elim.is_feasible({"p": Fraction(1), "q": Fraction(2)})
    assert not elim.is_feasible({"p": Fraction(1), "q": Fraction(1)})


def test_eliminate_solution_satisfies_equations():
    eqs = [
        Equation({"x": Fraction(1), "y": Fraction(2)}, {"p": Fraction(3)}),
        Equation({"y": Fraction(1), "z": Fraction(-1)}, {"p": Fraction(1)}),
    ]
    elim = eliminate(eqs)
    sol = elim.solve({"p": Fraction(5)}, Fraction(0))
    for eq in eqs:
        assert sum(c * sol.get(v, 0) for v, c in eq.coeffs.items()) == 5 * eq.rhs["p"]


def test_express_in_span():
    forms = [{"a": Fraction(1), "b": Fraction(1)}, {"b": Fraction(1)}]
    lam = express_in_span({"a": Fraction(2), "b": Fraction(5)}, forms)
    assert lam == {0: 2, 1: 3}
    assert express_in_span({"c": Fraction(1)}, forms) is None


def test_matrix_inverse():
    n = 5
    a = [[CyclotomicValue.rational(n, 2), CyclotomicValue.zeta(n)], [CyclotomicValue.rational(n, 1), CyclotomicValue.rational(n, 3)]]
    inv = mat_inverse(a, CyclotomicValue(n), CyclotomicValue.rational(n, 1))
    prod = mat_mul(a, inv, CyclotomicValue(n))
    assert prod[0][0] == 1 and prod[1][1] == 1 and not prod[0][1] and not prod[1][0]


# --- the quiver and its modules ---------------------------------------------------

def test_quiver_shape():
    q = build_quiver(A233)
    assert len(q.vertices) == 2 + 3 + 6
    assert len(q.arrows) == 6 + 12
    assert len(q.relations) == 9
    assert len(build_quiver(CoxeterMatrix.triangle(3, 3, float("inf"))).relations) == 6


@pytest.mark.parametrize("matrix,dim", [(A222, 4), (A233, 12), (CoxeterMatrix.dihedral(5), 5)])
def test_regular_module_verifies(matrix, dim):
    module = regular_module(matrix)
    assert module.dims["N"] == dim
    assert verify_module(module) == []


def test_trivial_module_verifies():
    for orders in [(2, 3, 7), (4, 4, 5), (2, 2, 2)]:
        assert verify_module(trivial_module(CoxeterMatrix.triangle(*orders))) == []


def test_wrong_order_is_reported():
    # a_01 -> -1 has order 2, but m_01 = 3 demands order dividing 3
    matrix = CoxeterMatrix.triangle(3, 2, 2)
    module = module_from_representation(matrix, {(0, 1): [[-1]], (0, 2): [[1]]})
    assert verify_module(module) == ["order(0,1)"]


def test_broken_triangle_is_reported():
    module = regular_module(A222)
    module.maps[("h", 0, 1)] = module.maps[("f", "S", 1)]
    failed = verify_module(module)
    assert "N-triangle(0,1)" in failed


def test_dimension_mismatch_raises():
    module = trivial_module(A222)
    module.maps[("g", 0, 1)] = [[module.one, module.one]]
    with pytest.raises(InvalidInputError):
        verify_module(module)


# --- first-order deformations ------------------------------------------------------

def test_zero_direction_is_feasible():
    module = regular_module(A222)
    result = first_order_deformation(module, {})
    assert result.feasible and result.correction == {}


def test_233_generic_direction_is_infeasible_with_determinant_certificate():
    module = regular_module(A233)
    elim = deformation_system(module)
    tau = generic_tau(A233, seed=0)
    functional = determinant_obstruction(A233).first_order()
    result = first_order_deformation(module, tau, elim, preferred=[functional])
    assert not result.feasible
    rhs = check_certificate(elim, result.certificate)
    # proportional to sum (D/m) tau (here equal)
    assert {p: c for p, c in rhs.items()} == {p: CyclotomicValue.rational(6, e) for p, e in functional.items()}
    expected = sum(Fraction(e) * tau[p] for p, e in functional.items())
    assert result.certificate_value == CyclotomicValue.rational(6, expected) and expected != 0


def test_determinant_functional_lies_in_obstruction_span():
    for matrix in (A222, A233):
        elim = deformation_system(regular_module(matrix))
        y = certificate_for(elim, determinant_obstruction(matrix).first_order())
        assert y is not None
        assert check_certificate(elim, y)


def test_direction_killing_every_obstruction_is_feasible():
    # uniform shifts a, b, c on the pairs 01, 02, 12 with a - b + c = 0
    module = regular_module(A222)
    elim = deformation_system(module)
    shift = {(0, 1): 1, (0, 2): 1, (1, 2): 0}
    tau = {p: Fraction(shift[(p.i, p.j)]) for p in generic_tau(A222)}
    assert elim.is_feasible({p: CyclotomicValue.rational(2, v) for p, v in tau.items()})
    result = first_order_deformation(module, tau, elim)
    assert result.feasible and result.correction
    assert check_correction(module, tau, result.correction)


def test_feasible_correction_is_checked_independently():
    module = regular_module(CoxeterMatrix.dihedral(3))
    tau = generic_tau(CoxeterMatrix.dihedral(3), seed=2)
    result = first_order_deformation(module, tau)
    assert result.feasible
    assert check_correction(module, tau, result.correction)


def test_222_on_determinant_hyperplane_is_reported():
    module = regular_module(A222)
    elim = deformation_system(module)
    functional = determinant_obstruction(A222).first_order()
    tau = generic_tau(A222, seed=3)
    pivot = min(functional)
    tau[pivot] -= sum(e * tau[p] for p, e in functional.items()) / functional[pivot]
    assert sum(e * tau[p] for p, e in functional.items()) == 0
    result = first_order_deformation(module, tau, elim)
    # the obstruction space is larger than the determinant line, so this
    # generic point of the hyperplane is still obstructed
    assert len(result.obstruction_basis) > 1
    assert result.feasible is False
