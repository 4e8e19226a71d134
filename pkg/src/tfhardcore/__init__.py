"""Exact counting and numerical bound checks for the hard-core model on triangle-free graphs."""

from .graph_core import Graph, count_triangles, from_edge_list, is_triangle_free
from .ipoly_exact import (
    IndependencePolynomial,
    brute_force_polynomial,
    independence_number,
    independence_polynomial,
    log_z,
    occupancy_fraction,
)
from .special_functions import (
    c_lambda,
    conjecture_rhs,
    f_lambda,
    lambert_w,
    shearer_rate,
    shearer_sharpness_eta,
    upper_rate_phi,
)

__all__ = [
    "Graph",
    "IndependencePolynomial",
    "brute_force_polynomial",
    "c_lambda",
    "conjecture_rhs",
    "count_triangles",
    "f_lambda",
    "from_edge_list",
    "independence_number",
    "independence_polynomial",
    "is_triangle_free",
    "lambert_w",
    "log_z",
    "occupancy_fraction",
    "shearer_rate",
    "shearer_sharpness_eta",
    "upper_rate_phi",
]
