"""Exact computation in deformed Coxeter group algebras A(M) and A_+(M)."""

__version__ = "0.1.0"

from .algebra import AlgebraElement, DeformedAlgebra, group_algebra, normal_form, specialize_element
from .coefficients import GenericPoint, GroupPoint, Symbolic
from .complex import build_sigma, euler_characteristic, orbifold_stats
from .coxeter import (
    INF,
    CoxeterGroup,
    CoxeterMatrix,
    GroupElement,
    canonical_word,
    enumerate_elements,
    growth_series,
    is_reduced,
    parabolic_submatrix,
    rank3_is_finite,
)
from .cyclotomic import CyclotomicValue, cyclotomic_polynomial, specialize_group
from .errors import BudgetExceededError, CoxdefError, InvalidInputError, NotAUnitError
from .flatness import determinant_obstruction, find_nonflat_witness, is_flat
from .fuchsian import FuchsianSignature, cyclic_matrix, fuchsian_is_flat, hecke_basis
from .laurent import LaurentPoly, ParamIndex, sigma_twist, t
from .quiver import build_quiver, first_order_deformation, regular_module, verify_module
from .rank2 import braid_rule, rank2_model
