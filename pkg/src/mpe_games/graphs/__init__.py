"""
Game graphs, strategies and the structural algorithms on them.
"""

from .cycle_bases import CycleMixtureBasis, eulerian_cycle_sets
from .game_graph import Edge, GameGraph, Player, Vertex, build_graph
from .loader import (
    graph_from_document,
    graph_to_document,
    load_graph,
    load_strategy,
    parse_graph,
    strategy_from_document,
    strategy_to_document,
)
from .product import product, prune_strategy, reachable_pairs
from .strategies import MemorylessStrategy, MooreStrategy, memoryless_strategies
from .structure import (
    Component,
    Cycle,
    attractor,
    cycle_average,
    reachable_sccs,
    reachable_vertices,
    scc_decompose,
    simple_cycles,
)

__all__ = [
    "CycleMixtureBasis",
    "eulerian_cycle_sets",
    "Edge",
    "GameGraph",
    "Player",
    "Vertex",
    "build_graph",
    "graph_from_document",
    "graph_to_document",
    "load_graph",
    "load_strategy",
    "parse_graph",
    "strategy_from_document",
    "strategy_to_document",
    "product",
    "prune_strategy",
    "reachable_pairs",
    "MemorylessStrategy",
    "MooreStrategy",
    "memoryless_strategies",
    "Component",
    "Cycle",
    "attractor",
    "cycle_average",
    "reachable_sccs",
    "reachable_vertices",
    "scc_decompose",
    "simple_cycles",
]
