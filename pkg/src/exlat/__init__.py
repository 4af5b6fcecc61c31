"""Exponent lattices of multiplicative relations among algebraic numbers."""

from .algebraic import (
    AlgebraicNumber,
    General,
    RootOfRational,
    RootOfUnity,
    classify,
    degree_reduction,
    equals_one,
    min_poly_of_power,
    min_poly_of_product,
    min_poly_of_sum,
    nondegenerate_check,
    power_product,
    root_of_rational_test,
    root_of_unity_test,
    unitary_test,
)
from .intlinalg import hnf, lattice_equal, lattice_membership, solve_congruence, solve_diophantine
from .isolation import AngleInterval, Rectangle, argument_interval, isolate_roots, refine
from .lattice import (
    LatticeBasis,
    classify_number,
    first_basis_vector,
    get_basis,
    get_pre_basis,
    isomorphism,
    pre_basis_to_basis,
    preprocess,
    rational_inputs,
)
from .polynomial import IntPolynomial, cyclotomic_polynomial, factor_rational_poly, resultant
from .rationals import factorize_rational, solve_rational_relation
from .search import BoundStrategy, Inconclusive, decide_dependence, loher_masser_bound

__version__ = "0.1.0"

__all__ = [
    "AlgebraicNumber",
    "AngleInterval",
    "BoundStrategy",
    "General",
    "Inconclusive",
    "IntPolynomial",
    "LatticeBasis",
    "Rectangle",
    "RootOfRational",
    "RootOfUnity",
    "argument_interval",
    "classify",
    "classify_number",
    "cyclotomic_polynomial",
    "decide_dependence",
    "degree_reduction",
    "equals_one",
    "factor_rational_poly",
    "factorize_rational",
    "first_basis_vector",
    "get_basis",
    "get_pre_basis",
    "hnf",
    "isolate_roots",
    "isomorphism",
    "lattice_equal",
    "lattice_membership",
    "loher_masser_bound",
    "min_poly_of_power",
    "min_poly_of_product",
    "min_poly_of_sum",
    "nondegenerate_check",
    "power_product",
    "pre_basis_to_basis",
    "preprocess",
    "rational_inputs",
    "refine",
    "resultant",
    "root_of_rational_test",
    "root_of_unity_test",
    "solve_congruence",
    "solve_diophantine",
    "solve_rational_relation",
    "unitary_test",
]
