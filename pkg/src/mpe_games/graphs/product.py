"""
Product of a game graph with a player-1 Moore strategy.

Product vertices are pairs (v, m). At a player-1 pair only the edge chosen by
the strategy survives; at a player-2 pair every outgoing edge survives. Each
product edge remembers the original edge id in ``origin``.
"""

import logging
from collections import deque
from typing import Dict, List, Tuple

from ..exceptions import StrategyError
from .game_graph import Edge, GameGraph, Player, Vertex
from .strategies import MooreStrategy, State

# Get logger for this module
logger = logging.getLogger(__name__)


def _moves(g: GameGraph, sigma: MooreStrategy, vertex: str, state: State) -> List[int]:
    if g.owner(vertex) is Player.P2:
        return g.out_edge_ids(vertex)
    edge_id = sigma.next_edge(state, vertex)
    if edge_id is None:
        raise StrategyError(f"strategy has no move at vertex {vertex!r} in memory state {state!r}")
    if edge_id not in g.edges or g.edges[edge_id].source != vertex:
        raise StrategyError(f"strategy move {edge_id} at vertex {vertex!r} is not an outgoing edge")
    return [edge_id]


def reachable_pairs(g: GameGraph, sigma: MooreStrategy) -> List[Tuple[str, State]]:
    """Pairs (v, m) reachable from (v0, m0), in breadth-first discovery order."""
    start = (g.initial, sigma.initial)
    seen = {start}
    order = [start]
    queue = deque([start])
    while queue:
        vertex, state = queue.popleft()
        for edge_id in _moves(g, sigma, vertex, state):
            succ = (g.edges[edge_id].target, sigma.next_state(state, edge_id))
            if succ not in seen:
                seen.add(succ)
                order.append(succ)
                queue.append(succ)
    return order


def product(g: GameGraph, sigma: MooreStrategy, reachable_only: bool = True) -> GameGraph:
    """
    Build the graph of g played according to sigma.

    Args:
        g: Game graph
        sigma: Player-1 Moore strategy
        reachable_only: Keep only pairs reachable from (v0, m0); otherwise
            build all of V x M (sigma must then be total on every owned pair)

    Returns:
        Product GameGraph; vertex ids are ``"{v}|{i}"`` with i the position of
        the memory state in ``sigma.memory``

    Raises:
        StrategyError: If sigma has no valid move at a needed pair
    """
    index = {state: i for i, state in enumerate(sigma.memory)}
    for state in [sigma.initial, *sigma.updates.values()]:
        if state not in index:
            raise StrategyError(f"memory state {state!r} is not declared")

    if reachable_only:
        pairs = reachable_pairs(g, sigma)
    else:
        pairs = [(v, m) for v in g.vertices for m in sigma.memory]

    def pair_id(vertex: str, state: State) -> str:
        return f"{vertex}|{index[state]}"

    vertices = [Vertex(pair_id(v, m), g.owner(v), (v, m)) for v, m in pairs]
    edges = []
    for vertex, state in pairs:
        for edge_id in _moves(g, sigma, vertex, state):
            edge = g.edges[edge_id]
            edges.append(Edge(
                len(edges),
                pair_id(vertex, state),
                pair_id(edge.target, sigma.next_state(state, edge_id)),
                edge.weight,
                edge_id,
            ))
    result = GameGraph(vertices, edges, pair_id(g.initial, sigma.initial), g.k)
    logger.debug(f"Product built: {len(vertices)} vertices, {len(edges)} edges")
    return result


def prune_strategy(g: GameGraph, sigma: MooreStrategy) -> MooreStrategy:
    """
    Drop memory states that are never reached and rename the rest to 0..n-1.

    States are numbered in breadth-first discovery order of the product,
    which keeps the output deterministic.
    """
    pairs = reachable_pairs(g, sigma)
    order: List[State] = []
    seen = set()
    for _, state in pairs:
        if state not in seen:
            seen.add(state)
            order.append(state)
    rename = {state: i for i, state in enumerate(order)}
    next_moves: Dict[Tuple[int, str], int] = {}
    updates: Dict[Tuple[int, int], int] = {}
    for vertex, state in pairs:
        for edge_id in _moves(g, sigma, vertex, state):
            if g.owner(vertex) is Player.P1:
                next_moves[(rename[state], vertex)] = edge_id
            target = sigma.next_state(state, edge_id)
            if target != state:
                updates[(rename[state], edge_id)] = rename[target]
    return MooreStrategy(tuple(range(len(order))), 0, next_moves, updates)
