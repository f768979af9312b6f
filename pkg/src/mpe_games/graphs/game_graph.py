"""
Game graph data model.

A game graph is a finite directed multigraph whose vertices are partitioned
between player 1 (the minimiser, who picks a finite-memory strategy) and
player 2 (the maximiser). Edges carry exact rational weight vectors and are
identified by integer ids, which survive every subgraph operation so that
cycles and strategies can always be projected back.
"""

import logging
from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from ..exceptions import GameGraphError

# Get logger for this module
logger = logging.getLogger(__name__)


class Player(IntEnum):
    P1 = 1
    P2 = 2

    @property
    def opponent(self) -> "Player":
        return Player.P2 if self is Player.P1 else Player.P1


@dataclass(frozen=True)
class Vertex:
    id: str
    owner: Player
    origin: Optional[Hashable] = None


@dataclass(frozen=True)
class Edge:
    id: int
    source: str
    target: str
    weight: Tuple[Fraction, ...]
    origin: Optional[Hashable] = None


class GameGraph:
    """
    Immutable game graph with k-dimensional rational weights.

    Vertex order is the insertion order and is used for every deterministic
    tie-break downstream. Outgoing edges of a vertex are kept in id order.
    """

    def __init__(self, vertices: Iterable[Vertex], edges: Iterable[Edge], initial: str, k: int):
        self.vertices: Dict[str, Vertex] = {}
        for vertex in vertices:
            if vertex.id in self.vertices:
                raise GameGraphError(f"duplicate vertex id {vertex.id!r}")
            self.vertices[vertex.id] = vertex
        self.edges: Dict[int, Edge] = {}
        for edge in edges:
            if edge.id in self.edges:
                raise GameGraphError(f"duplicate edge id {edge.id}")
            self.edges[edge.id] = edge
        self.initial = initial
        self.k = k
        self._out: Dict[str, List[int]] = {v: [] for v in self.vertices}
        self._order = {v: i for i, v in enumerate(self.vertices)}
        self._validate()
        for edge_id in sorted(self.edges):
            self._out[self.edges[edge_id].source].append(edge_id)
        for vertex_id, out in self._out.items():
            if not out:
                raise GameGraphError(f"vertex {vertex_id!r} has no outgoing edge")

    def _validate(self):
        if self.k < 1:
            raise GameGraphError(f"dimension count must be positive, got {self.k}")
        if self.initial not in self.vertices:
            raise GameGraphError(f"initial vertex {self.initial!r} does not exist")
        for edge in self.edges.values():
            for endpoint in (edge.source, edge.target):
                if endpoint not in self.vertices:
                    raise GameGraphError(f"edge {edge.id} uses unknown vertex {endpoint!r}")
            if len(edge.weight) != self.k:
                raise GameGraphError(f"edge {edge.id} has {len(edge.weight)} weights, expected {self.k}")

    def __repr__(self):
        return (f"GameGraph(|V|={len(self.vertices)}, |E|={len(self.edges)}, "
                f"k={self.k}, initial={self.initial!r})")

    # Queries

    def owner(self, vertex_id: str) -> Player:
        return self.vertices[vertex_id].owner

    def out_edges(self, vertex_id: str) -> List[Edge]:
        return [self.edges[e] for e in self._out[vertex_id]]

    def out_edge_ids(self, vertex_id: str) -> List[int]:
        return list(self._out[vertex_id])

    def owned_by(self, player: Player) -> List[str]:
        return [v.id for v in self.vertices.values() if v.owner is player]

    def order(self, vertex_id: str) -> int:
        return self._order[vertex_id]

    def choice_vertices(self, player: Player) -> List[str]:
        """Vertices of the player with more than one outgoing edge, in vertex order."""
        return [v for v in self.owned_by(player) if len(self._out[v]) > 1]

    def to_networkx(self) -> nx.MultiDiGraph:
        graph = nx.MultiDiGraph()
        graph.add_nodes_from(self.vertices)
        for edge in self.edges.values():
            graph.add_edge(edge.source, edge.target, key=edge.id)
        return graph

    # Derived graphs

    def with_initial(self, vertex_id: str) -> "GameGraph":
        return GameGraph(self.vertices.values(), self.edges.values(), vertex_id, self.k)

    def subgraph(self, vertex_ids: Iterable[str], initial: Optional[str] = None) -> "GameGraph":
        """
        Induced subgraph, keeping vertex order and edge ids.

        Raises:
            GameGraphError: If a kept vertex loses all of its outgoing edges
        """
        keep = set(vertex_ids)
        if initial is None:
            initial = self.initial if self.initial in keep else next(v for v in self.vertices if v in keep)
        return GameGraph(
            [v for v in self.vertices.values() if v.id in keep],
            [e for e in self.edges.values() if e.source in keep and e.target in keep],
            initial,
            self.k,
        )

    def without_edges(self, edge_ids: Iterable[int]) -> "GameGraph":
        drop = set(edge_ids)
        return GameGraph(self.vertices.values(),
                         [e for e in self.edges.values() if e.id not in drop],
                         self.initial, self.k)

    def restrict(self, choices: Dict[str, int]) -> "GameGraph":
        """Keep only the chosen outgoing edge at every vertex that has a choice entry."""
        return GameGraph(
            self.vertices.values(),
            [e for e in self.edges.values() if e.source not in choices or choices[e.source] == e.id],
            self.initial,
            self.k,
        )


def build_graph(k: int, initial: str, owners: Dict[str, Player],
                arcs: Sequence[Tuple[str, str, Sequence]]) -> GameGraph:
    """
    Convenience constructor: vertices from an owner map, edges numbered in order.

    Args:
        k: Dimension count
        initial: Initial vertex id
        owners: Vertex id to owner, in vertex order
        arcs: (source, target, weight) triples; weights may be ints, Fractions or strings
    """
    vertices = [Vertex(v, Player(owner)) for v, owner in owners.items()]
    edges = [Edge(i, s, t, tuple(Fraction(x) for x in w)) for i, (s, t, w) in enumerate(arcs)]
    return GameGraph(vertices, edges, initial, k)
