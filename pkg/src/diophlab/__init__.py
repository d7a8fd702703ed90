"""Exact tools for triples that are D(n)-sets for several n at once."""
from .arith import DomainError, Factorization, divisors, factorize, is_prime, is_square, isqrt
from .curve import (
    INFINITY, CurveSpec, InconsistencyError, Point, add, double, induced_curve, is_on_curve,
    multiply, n_from_double, named_points, negate, q_point, q_values, x2p_formula, x2q_formula,
    xs2p_formula,
)
from .dnset import (
    ScaledSolution, SpectrumEntry, SquareWitness, Triple, is_dn_set, is_rational_solution,
    scale_solutions, spectrum, spectrum_bruteforce,
)
from .families import (
    FamilyOutput, extend_pair_regular, family_k, inf1, inf2, inf3, rec_sequence, regc_extension,
    regular_quad_d,
)
from .search import (
    SearchReport, enum_pairs, extend_pair, search_family_k, search_fourth_n, search_s2p,
)

__version__ = "0.1.0"
