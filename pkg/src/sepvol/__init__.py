"""Exact fixed-point subpolytopes of symmetric edge polytopes and their relative volumes."""

from .combinat import Graph, Permutation, complete_graph, cycle_blocks, parse_cycles, parse_graph
from .ehrhart import count_dilate, leading_coefficient
from .polytope import Polytope, convex_hull, rvol
from .sep import (
    fixed_polytope,
    rvol_fixed_formula,
    rvol_kn_closed_form,
    rvol_kn_fixed_formula,
    sep_build,
)

__all__ = [
    "Graph",
    "Permutation",
    "Polytope",
    "complete_graph",
    "convex_hull",
    "count_dilate",
    "cycle_blocks",
    "fixed_polytope",
    "leading_coefficient",
    "parse_cycles",
    "parse_graph",
    "rvol",
    "rvol_fixed_formula",
    "rvol_kn_closed_form",
    "rvol_kn_fixed_formula",
    "sep_build",
]
__version__ = "0.1.0"
