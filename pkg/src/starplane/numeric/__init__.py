"""Numeric layer: quadrature, contour integrals, star norms, Fredholm solves, string action."""

from .quadrature import NumericEnv, QuadratureSpec, nodes_weights, integrate, MEASURE_FACTOR
from .nsymbol import NumericSymbol, numeric_star
from .contour import contour_integral_circle, contour_exact, family_commutator, family_expected
from .functional import (KernelSpec, star_inner_product, norm_diagnostic, gram_schmidt,
                         operator_norm_bound, neumann_solve, dense_solve_oracle, closed_form_h0,
                         cauchy_schwarz_search, poisson_integral, classical_inner_product)
from .action import TrigSymbol, string_action, fourier_window_check, symbolic_pb_identity

__all__ = [
    "NumericEnv", "QuadratureSpec", "nodes_weights", "integrate", "MEASURE_FACTOR",
    "NumericSymbol", "numeric_star",
    "contour_integral_circle", "contour_exact", "family_commutator", "family_expected",
    "KernelSpec", "star_inner_product", "norm_diagnostic", "gram_schmidt",
    "operator_norm_bound", "neumann_solve", "dense_solve_oracle", "closed_form_h0",
    "cauchy_schwarz_search", "poisson_integral", "classical_inner_product",
    "TrigSymbol", "string_action", "fourier_window_check", "symbolic_pb_identity",
]
