"""
Cycle mixture bases of one-player graphs.

Every cyclic path of a strongly connected one-player graph decomposes into
simple cycles of that component, and its average is the mixture of their
averages weighted by length-scaled multiplicities. Conversely a mixture whose
support is a connected family of simple cycles (two cycles are adjacent when
they share a vertex) is the average of a closed walk that traverses the
family, because the union of such a family is Eulerian after repetition.
So each nontrivial reachable SCC contributes one basis: all of its simple
cycles, with the connectivity of the support as the realizability test.
The per-family bases are never listed; a connected family is any support
that passes ``is_connected_family``, and the averages of closed walks in the
SCC are exactly the points of mixings with connected support.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, List, Sequence, Set, Tuple

import networkx as nx

from .game_graph import GameGraph
from .structure import Cycle, reachable_sccs, simple_cycles

# Get logger for this module
logger = logging.getLogger(__name__)

Vector = Tuple[Fraction, ...]


@dataclass(frozen=True)
class CycleMixtureBasis:
    component: Tuple[str, ...]
    cycles: Tuple[Cycle, ...]

    @property
    def size(self) -> int:
        return len(self.cycles)

    @property
    def columns(self) -> Tuple[Vector, ...]:
        return tuple(c.average for c in self.cycles)

    def point(self, mixing: Sequence[Fraction]) -> Vector:
        """Image ``A . mixing`` of a mixing vector."""
        k = len(self.cycles[0].average)
        return tuple(sum((x * c.average[d] for x, c in zip(mixing, self.cycles)), Fraction(0))
                     for d in range(k))

    def adjacency(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(len(self.cycles)))
        vertex_sets = [set(c.vertices) for c in self.cycles]
        for i in range(len(self.cycles)):
            for j in range(i + 1, len(self.cycles)):
                if vertex_sets[i] & vertex_sets[j]:
                    graph.add_edge(i, j)
        return graph

    def is_connected_family(self, indices: Sequence[int]) -> bool:
        family = set(indices)
        if not family:
            return False
        return nx.is_connected(self.adjacency().subgraph(family))

    def support(self, mixing: Sequence[Fraction]) -> List[int]:
        return [i for i, x in enumerate(mixing) if x > 0]

    def is_realizable_mixing(self, mixing: Sequence[Fraction]) -> bool:
        """A mixing is realizable when it is a distribution with connected support."""
        if any(x < 0 for x in mixing) or sum(mixing, Fraction(0)) != 1:
            return False
        return self.is_connected_family(self.support(mixing))

    def components_of(self, indices: Sequence[int]) -> List[List[int]]:
        """Connected components of a cycle family, each sorted, in order of smallest member."""
        sub = self.adjacency().subgraph(set(indices))
        parts = [sorted(part) for part in nx.connected_components(sub)]
        return sorted(parts)

    def key(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(c.edges for c in self.cycles)


def eulerian_cycle_sets(h: GameGraph) -> List[CycleMixtureBasis]:
    """
    One mixture basis per nontrivial SCC reachable from the initial vertex.

    A basis stands for all connected cycle families of its SCC at once: every
    closed walk of the SCC has the average of a realizable mixing, and every
    rational realizable mixing is the average of some closed walk.

    Args:
        h: Graph in which the strategy owner has no choices left

    Returns:
        Bases in SCC order; each lists the simple cycles of its SCC
    """
    bases = []
    for component in reachable_sccs(h):
        if component.trivial:
            continue
        cycles = simple_cycles(h, component.vertices)
        bases.append(CycleMixtureBasis(component.vertices, tuple(cycles)))
    logger.debug(f"Found {len(bases)} cycle bases with sizes {[b.size for b in bases]}")
    return bases
