"""Exact construction and analysis of Ted's polytope.

The polytope is the convex hull of the Birkhoff polytope's permutation
matrices after tours are stretched by (1 + eps) and non-tours are shifted
by eps/n in every entry. Everything is computed in exact rationals.
"""
from .extremality import (
    bracket_epsilon_max, classify_extrema, is_epsilon_good, is_extreme)
from .facets import affine_dim, enumerate_facets, project, verify_hrep
from .hamilton import (
    Digraph, brute_max, check_theorem_bounds, lp_decide, oracle_is_hamiltonian)
from .lp import BACKEND, LpProblem, LpResult, feasible, solve
from .permutations import (
    ClassCounts, PermClass, Permutation, class_counts, classify, enumerate_permutations,
    to_matrix)
from .rational import ExactMatrix, dot, format_rational, normalize, parse_rational, rank
from .transform import QPoint, PointSet, build_point_set, center, make_qpoint, stretch_tour

__all__ = [
    "BACKEND", "ClassCounts", "Digraph", "ExactMatrix", "LpProblem", "LpResult", "PermClass",
    "Permutation", "PointSet", "QPoint", "affine_dim", "bracket_epsilon_max", "brute_max",
    "build_point_set", "center", "check_theorem_bounds", "class_counts", "classify",
    "classify_extrema", "dot", "enumerate_facets", "enumerate_permutations", "feasible",
    "format_rational", "is_epsilon_good", "is_extreme", "lp_decide", "make_qpoint",
    "normalize", "oracle_is_hamiltonian", "parse_rational", "project", "rank", "solve",
    "stretch_tour", "to_matrix", "verify_hrep",
]
