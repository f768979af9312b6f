"""
Memoryless and Moore-machine strategies.

A Moore strategy is stored as two tables. ``next_moves[(m, v)]`` is the edge
taken at an owned vertex v in memory state m. ``updates[(m, e)]`` is the
memory state after traversing edge e from memory state m; missing entries
leave the memory unchanged. Moves are edges rather than successor vertices
because graphs may have parallel edges.
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, Hashable, Iterator, Optional, Sequence, Tuple

from ..exceptions import StrategyError
from .game_graph import GameGraph, Player

# Get logger for this module
logger = logging.getLogger(__name__)

State = Hashable


@dataclass(frozen=True)
class MemorylessStrategy:
    """Choice of one outgoing edge for every vertex of a player."""
    player: Player
    choices: Tuple[Tuple[str, int], ...]

    @property
    def choice_map(self) -> Dict[str, int]:
        return dict(self.choices)

    def describe(self, g: GameGraph) -> Dict[str, str]:
        """Vertex to chosen successor, for reports."""
        return {v: g.edges[e].target for v, e in self.choices}


def memoryless_strategies(g: GameGraph, player: Player) -> Iterator[MemorylessStrategy]:
    """
    Enumerate every memoryless strategy of a player.

    Vertices are taken in vertex order and edges in id order, so the
    enumeration order is deterministic. A player owning nothing has exactly
    one (empty) strategy.
    """
    owned = g.owned_by(player)
    options = [g.out_edge_ids(v) for v in owned]
    for combo in itertools.product(*options):
        yield MemorylessStrategy(player, tuple(zip(owned, combo)))


@dataclass
class MooreStrategy:
    memory: Tuple[State, ...]
    initial: State
    next_moves: Dict[Tuple[State, str], int] = field(default_factory=dict)
    updates: Dict[Tuple[State, int], State] = field(default_factory=dict)

    def next_edge(self, state: State, vertex: str) -> Optional[int]:
        return self.next_moves.get((state, vertex))

    def next_state(self, state: State, edge_id: int) -> State:
        return self.updates.get((state, edge_id), state)

    @classmethod
    def from_memoryless(cls, tau: MemorylessStrategy) -> "MooreStrategy":
        return cls((0,), 0, {(0, v): e for v, e in tau.choices}, {})

    def validate(self, g: GameGraph, player: Player = Player.P1):
        """
        Check that the tables only refer to the graph and to known states.

        Raises:
            StrategyError: On a foreign vertex, edge or memory state
        """
        states = set(self.memory)
        if len(states) != len(self.memory):
            raise StrategyError("duplicate memory states")
        if self.initial not in states:
            raise StrategyError(f"initial memory state {self.initial!r} is not a memory state")
        for (state, vertex), edge_id in self.next_moves.items():
            if state not in states:
                raise StrategyError(f"move table uses unknown memory state {state!r}")
            if vertex not in g.vertices:
                raise StrategyError(f"move table uses unknown vertex {vertex!r}")
            if g.owner(vertex) is not player:
                raise StrategyError(f"move table assigns a move at {vertex!r}, which player {int(player)} does not own")
            if edge_id not in g.edges or g.edges[edge_id].source != vertex:
                raise StrategyError(f"move at ({state!r}, {vertex!r}) is not an outgoing edge of {vertex!r}")
        for (state, edge_id), target in self.updates.items():
            if state not in states or target not in states:
                raise StrategyError(f"update ({state!r}, {edge_id}) -> {target!r} uses an unknown memory state")
            if edge_id not in g.edges:
                raise StrategyError(f"update table uses unknown edge {edge_id}")

    def relabeled(self, order: Sequence[State]) -> "MooreStrategy":
        """Rename the listed states to 0..n-1 and drop entries of all other states."""
        rename = {state: i for i, state in enumerate(order)}
        return MooreStrategy(
            tuple(range(len(order))),
            rename[self.initial],
            {(rename[m], v): e for (m, v), e in self.next_moves.items() if m in rename},
            {(rename[m], e): rename[t] for (m, e), t in self.updates.items()
             if m in rename and t in rename and t != m},
        )

    @property
    def size(self) -> int:
        return len(self.memory)
