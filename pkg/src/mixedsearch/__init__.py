"""Mixed search against an agile, visible fugitive.

Loose tree-decompositions, tight brambles, Cartesian tree products, strategy
synthesis for both players, and exhaustive solvers for small graphs.
"""
from .bramble import (
    TightBramble,
    cycle_bramble,
    is_cover,
    is_tight_bramble,
    max_order_bramble,
    normalize_singletons,
    order,
    tightly_touching,
)
from .cartesian import build_product, canonical_ltd, embed_in_cartesian_product
from .decomposition import LooseTreeDecomposition, fullify, is_full, marginal_edges, validate, width
from .errors import InputError, MixedSearchError, ResourceGuardError, StrategyFault, StructuralError
from .game import (
    CAPTURED,
    GameState,
    Play,
    SearcherMove,
    accessible_edges,
    avoiding_pathway_exists,
    clear_set,
    fugitive_space,
    is_monotone,
    play_cost,
    step,
)
from .graph import Graph, contract_edge, is_separator, separates, verify_minor_model
from .oracle import brute_avms, brute_mavms, brute_min_ltd_width, verify_theorem
from .strategies import fugitive_from_bramble, run_match, searcher_from_ltd, tree_searcher

__version__ = "0.1.0"

__all__ = [
    "TightBramble",
    "cycle_bramble",
    "is_cover",
    "is_tight_bramble",
    "max_order_bramble",
    "normalize_singletons",
    "order",
    "tightly_touching",
    "build_product",
    "canonical_ltd",
    "embed_in_cartesian_product",
    "LooseTreeDecomposition",
    "fullify",
    "is_full",
    "marginal_edges",
    "validate",
    "width",
    "InputError",
    "MixedSearchError",
    "ResourceGuardError",
    "StrategyFault",
    "StructuralError",
    "CAPTURED",
    "GameState",
    "Play",
    "SearcherMove",
    "accessible_edges",
    "avoiding_pathway_exists",
    "clear_set",
    "fugitive_space",
    "is_monotone",
    "play_cost",
    "step",
    "Graph",
    "contract_edge",
    "is_separator",
    "separates",
    "verify_minor_model",
    "brute_avms",
    "brute_mavms",
    "brute_min_ltd_width",
    "verify_theorem",
    "fugitive_from_bramble",
    "run_match",
    "searcher_from_ltd",
    "tree_searcher",
]
