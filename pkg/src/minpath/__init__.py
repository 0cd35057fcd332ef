"""Approximation toolkit for minimum-color paths on color-connected planar graphs.

Pipeline: a min-weight color-separator oracle (shortest paths in a two-layer
search graph over the planar dual) drives a cutting-plane solution of the
separator-hitting LP; the fractional solution is rounded through a
small-diameter decomposition of the color-intersection graph.  Exact
brute-force baselines, instance generators, and a JSON CLI round out the
package.
"""
from ._kernel import backend_name
from .config import Config
from .decomp import (
    ColorIntersectionGraph,
    Decomposition,
    build_color_graph,
    decompose,
    node_distance,
    set_diameter,
)
from .exact import ExactResult, exact_min_color_path, exact_min_separator, exact_prize, exact_steiner
from .gen import HardnessParams, Hypergraph, add_color_connector, gen_diamond_hardness, gen_grid, gen_random_hypergraph
from .instance import (
    INFINITE_PRIZE,
    ColoredPlanarGraph,
    Instance,
    TerminalPair,
    ValidationReport,
    host_vertices,
    load,
    make_graph,
    normalize_terminals,
    parse,
    serialize,
    validate,
)
from .lp import LpState, lp_lower_bound, solve_hitting_lp
from .planar import (
    DualColoredGraph,
    FaceList,
    ReferencePath,
    build_dual,
    dual_color_connectivity_check,
    embedding_from_points,
    faces,
    reference_path,
)
from .rounding import Solution, extract_path, round_hitting, solve, solve_prize, solve_steiner
from .separator import AuxiliaryGraph, SeparatorOracle, SeparatorResult, build_aux, min_color_separator, verify_separator
from .simplex import SimplexProblem, SimplexResult, simplex_solve

__version__ = "0.1.0"

__all__ = [
    "backend_name",
    "Config",
    "ColorIntersectionGraph",
    "Decomposition",
    "build_color_graph",
    "decompose",
    "node_distance",
    "set_diameter",
    "ExactResult",
    "exact_min_color_path",
    "exact_min_separator",
    "exact_prize",
    "exact_steiner",
    "HardnessParams",
    "Hypergraph",
    "add_color_connector",
    "gen_diamond_hardness",
    "gen_grid",
    "gen_random_hypergraph",
    "INFINITE_PRIZE",
    "ColoredPlanarGraph",
    "Instance",
    "TerminalPair",
    "ValidationReport",
    "host_vertices",
    "load",
    "make_graph",
    "normalize_terminals",
    "parse",
    "serialize",
    "validate",
    "LpState",
    "lp_lower_bound",
    "solve_hitting_lp",
    "DualColoredGraph",
    "FaceList",
    "ReferencePath",
    "build_dual",
    "dual_color_connectivity_check",
    "embedding_from_points",
    "faces",
    "reference_path",
    "Solution",
    "extract_path",
    "round_hitting",
    "solve",
    "solve_prize",
    "solve_steiner",
    "AuxiliaryGraph",
    "SeparatorOracle",
    "SeparatorResult",
    "build_aux",
    "min_color_separator",
    "verify_separator",
    "SimplexProblem",
    "SimplexResult",
    "simplex_solve",
]
