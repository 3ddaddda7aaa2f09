"""Primitive elements of Q[x1..xn]/(f1(x1),...,fn(xn)) and common source
matrices for families of commuting rational matrices."""

from .engine import AnalysisReport, Verdict, analyze, construct_common_source, negative_certificate
from .generators import CounterexampleSpec, companion, frobenius_pair, random_conjugate, rho_pair
from .matrixcore import QMatrix, identity, is_diagonalizable, min_poly_matrix, rref, solve_linear
from .polyring import UniPoly, derivative, is_separable, poly_gcd, resultant, squarefree_part, values_poly
from .quotient import (
    GridSpec,
    LinearForm,
    MPoly,
    QElem,
    QuotientAlgebra,
    build_annihilator,
    codim_quotient,
    dim_quotient,
    find_primitive_linear_form,
    has_primitive_element,
    hermite_membership,
    min_poly_of_injective_form,
    min_poly_residue,
    normal_form,
    sum_product_identity,
)
from .subalgebra import commute_check, express_as_polynomial, monte_carlo_codim, span_dimension

__version__ = "0.1.0"
