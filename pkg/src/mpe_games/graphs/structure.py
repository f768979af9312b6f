"""
Structural algorithms on game graphs: SCCs, cycles and attractors.
"""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

import networkx as nx

from ..exceptions import CertificateError
from .game_graph import Edge, GameGraph, Player
from .strategies import MemorylessStrategy

# Get logger for this module
logger = logging.getLogger(__name__)

Vector = Tuple[Fraction, ...]


@dataclass(frozen=True)
class Cycle:
    """Simple cycle as an edge sequence rotated to start at its smallest edge id."""
    edges: Tuple[int, ...]
    vertices: Tuple[str, ...]
    average: Vector

    def __len__(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class Component:
    vertices: Tuple[str, ...]
    terminal: bool
    trivial: bool


def cycle_average(g: GameGraph, edge_ids: Sequence[int]) -> Vector:
    """Average weight vector of a closed edge sequence."""
    length = len(edge_ids)
    return tuple(
        sum((g.edges[e].weight[d] for e in edge_ids), Fraction(0)) / length
        for d in range(g.k)
    )


def _canonical(g: GameGraph, edge_ids: Sequence[int]) -> Cycle:
    start = edge_ids.index(min(edge_ids))
    rotated = tuple(edge_ids[start:]) + tuple(edge_ids[:start])
    return Cycle(rotated, tuple(g.edges[e].source for e in rotated), cycle_average(g, rotated))


def simple_cycles(g: GameGraph, vertices: Optional[Iterable[str]] = None) -> List[Cycle]:
    """
    Enumerate every simple cycle once, parallel edges giving distinct cycles.

    Args:
        g: Game graph
        vertices: Optional vertex subset; only cycles inside it are listed

    Returns:
        Cycles sorted by (length, edge ids)
    """
    keep = set(g.vertices) if vertices is None else set(vertices)
    parallel: Dict[Tuple[str, str], List[int]] = {}
    for edge in g.edges.values():
        if edge.source in keep and edge.target in keep:
            parallel.setdefault((edge.source, edge.target), []).append(edge.id)

    skeleton = nx.DiGraph()
    skeleton.add_nodes_from(v for v in g.vertices if v in keep)
    skeleton.add_edges_from(parallel)

    cycles = []
    for vertex_cycle in nx.simple_cycles(skeleton):
        hops = [(vertex_cycle[i], vertex_cycle[(i + 1) % len(vertex_cycle)])
                for i in range(len(vertex_cycle))]
        for combo in itertools.product(*(sorted(parallel[hop]) for hop in hops)):
            cycles.append(_canonical(g, list(combo)))
    cycles.sort(key=lambda c: (len(c), c.edges))
    return cycles


def scc_decompose(g: GameGraph) -> List[Component]:
    """
    Strongly connected components in order of their first vertex.

    A component is terminal when no edge leaves it, and trivial when it is a
    single vertex without a self-loop.
    """
    components = []
    for members in nx.strongly_connected_components(g.to_networkx()):
        ordered = tuple(sorted(members, key=g.order))
        leaving = any(e.target not in members for v in ordered for e in g.out_edges(v))
        trivial = len(ordered) == 1 and not any(e.target == ordered[0] for e in g.out_edges(ordered[0]))
        components.append(Component(ordered, not leaving, trivial))
    components.sort(key=lambda c: g.order(c.vertices[0]))
    return components


def reachable_vertices(g: GameGraph, source: Optional[str] = None) -> Set[str]:
    source = g.initial if source is None else source
    return {source} | nx.descendants(g.to_networkx(), source)


def reachable_sccs(g: GameGraph) -> List[Component]:
    reachable = reachable_vertices(g)
    return [c for c in scc_decompose(g) if c.vertices[0] in reachable]


def attractor(g: GameGraph, player: Player, target: Iterable[str]) -> Tuple[Set[str], MemorylessStrategy]:
    """
    Vertices from which the player can force a visit to the target.

    Computed layer by layer as a least fixpoint of controlled predecessors.
    An owned vertex added in layer i moves along its smallest-id edge into
    layers < i, so the returned strategy reaches the target within |V| steps.

    Returns:
        (attractor set, memoryless strategy on the player's attractor vertices
        outside the target)
    """
    current = set(target)
    choices: Dict[str, int] = {}
    while True:
        layer = {}
        for vertex_id in g.vertices:
            if vertex_id in current:
                continue
            out = g.out_edges(vertex_id)
            if g.owner(vertex_id) is player:
                into = [e.id for e in out if e.target in current]
                if into:
                    layer[vertex_id] = min(into)
            elif all(e.target in current for e in out):
                layer[vertex_id] = None
        if not layer:
            break
        for vertex_id, edge_id in layer.items():
            current.add(vertex_id)
            if edge_id is not None:
                choices[vertex_id] = edge_id
    ordered = tuple((v, choices[v]) for v in g.vertices if v in choices)
    return current, MemorylessStrategy(player, ordered)


def _evaluate_policy(vertices: Sequence[str], policy: Dict[str, Edge],
                     gains: Mapping[int, Fraction]) -> Tuple[Dict[str, Fraction], Dict[str, Fraction]]:
    """Cycle mean and bias of every vertex under a one-successor policy."""
    mean: Dict[str, Fraction] = {}
    bias: Dict[str, Fraction] = {}

    def settle(vertex: str):
        edge = policy[vertex]
        mean[vertex] = mean[edge.target]
        bias[vertex] = gains[edge.id] - mean[vertex] + bias[edge.target]

    for start in vertices:
        path: List[str] = []
        position: Dict[str, int] = {}
        vertex = start
        while vertex not in mean and vertex not in position:
            position[vertex] = len(path)
            path.append(vertex)
            vertex = policy[vertex].target
        if vertex in position:
            loop = path[position[vertex]:]
            mean[vertex] = sum((gains[policy[u].id] for u in loop), Fraction(0)) / len(loop)
            bias[vertex] = Fraction(0)
            for u in reversed(loop[1:]):
                settle(u)
            path = path[:position[vertex]]
        for u in reversed(path):
            settle(u)
    return mean, bias


def max_cycle_mean(g: GameGraph, gains: Mapping[int, Fraction]) -> Fraction:
    """
    Largest mean gain over the cycles reachable from the initial vertex.

    Howard's policy iteration on exact rationals; cycles are never listed,
    so graphs with exponentially many simple cycles stay cheap.

    Args:
        g: Graph in which every reachable vertex has an outgoing edge
        gains: Scalar gain per edge id

    Raises:
        CertificateError: If the iteration does not settle
    """
    vertices = sorted(reachable_vertices(g), key=g.order)
    policy = {v: max(g.out_edges(v), key=lambda e: (gains[e.id], -e.id)) for v in vertices}
    for rounds in range(1, 10 * len(vertices) + 100):
        mean, bias = _evaluate_policy(vertices, policy, gains)
        changed = False
        for v in vertices:
            best = max(g.out_edges(v), key=lambda e: (mean[e.target], -e.id))
            if mean[best.target] > mean[v]:
                policy[v] = best
                changed = True
        if not changed:
            for v in vertices:
                level = [e for e in g.out_edges(v) if mean[e.target] == mean[v]]
                best = max(level, key=lambda e: (gains[e.id] + bias[e.target], -e.id))
                if gains[best.id] - mean[v] + bias[best.target] > bias[v]:
                    policy[v] = best
                    changed = True
        if not changed:
            logger.debug(f"Max cycle mean {mean[g.initial]} after {rounds} rounds on {len(vertices)} vertices")
            return mean[g.initial]
    raise CertificateError(f"policy iteration did not settle on {len(vertices)} vertices")
