"""
Winning regions and value regions.

Both algorithms look for a vertex that can be settled on its own, give its
minimizer attractor the same answer, and recurse on the rest of the graph.
A strategy that wins from a vertex outside the attractor keeps winning on
the remaining graph, so answers found on a subgraph stay valid.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .. import config
from ..expressions.normal_form import NormalFormExpression
from ..graphs.game_graph import GameGraph, Player
from ..graphs.loader import strategy_to_document
from ..graphs.strategies import MemorylessStrategy, MooreStrategy
from ..graphs.structure import attractor
from .intervals import ValueInterval, Verdict, VerdictKind
from .mixing_search import inf_value
from .synthesis import decide

# Get logger for this module
logger = logging.getLogger(__name__)

ATTRACT = ("attr",)


@dataclass
class RegionLevel:
    """One recursion step: the settled vertex, its attractor and strategy."""
    vertex: str
    vertices: Tuple[str, ...]
    attractor: Tuple[str, ...]
    attractor_strategy: MemorylessStrategy
    strategy: Optional[MooreStrategy] = None


@dataclass
class WinningRegion:
    nu: Fraction
    verdicts: Dict[str, Verdict]
    levels: List[RegionLevel] = field(default_factory=list)
    strategy: Optional[MooreStrategy] = None

    @property
    def winning(self) -> List[str]:
        return [v for v, verdict in self.verdicts.items() if verdict.kind is VerdictKind.YES]

    def to_document(self) -> Dict:
        document = {
            "nu": str(self.nu),
            "vertices": {v: verdict.kind.value for v, verdict in self.verdicts.items()},
            "levels": [{"vertex": level.vertex, "attractor": list(level.attractor)} for level in self.levels],
        }
        if self.strategy is not None:
            document["strategy"] = strategy_to_document(self.strategy)
        return document


@dataclass
class ValueRegion:
    intervals: Dict[str, ValueInterval]
    levels: List[Tuple[str, Tuple[str, ...]]] = field(default_factory=list)

    def to_document(self) -> Dict:
        return {
            "vertices": {v: {"lo": str(i.lo), "hi": str(i.hi)} for v, i in self.intervals.items()},
            "levels": [{"vertex": v, "attractor": list(a)} for v, a in self.levels],
        }


def _remaining(g: GameGraph, alive: Set[str]) -> GameGraph:
    return g.subgraph([v for v in g.vertices if v in alive])


def winning_region(g: GameGraph, nf: NormalFormExpression, nu: Fraction, eps: Fraction,
                   node_budget: int = config.BNB_NODE_BUDGET,
                   hints: Optional[Dict[str, Sequence[Sequence[Fraction]]]] = None) -> WinningRegion:
    """
    Three-valued minimizer winning region for threshold nu.

    Vertices are tried in vertex order. The first YES vertex settles its
    attractor and the search restarts on the rest; a NO is final only on the
    last level, where no vertex is YES.

    Returns:
        WinningRegion with a verdict per vertex and, when some vertex is
        YES, one strategy that wins from every YES vertex with initial
        memory ``("attr",)``
    """
    nu = Fraction(nu)
    hints = hints or {}
    alive = set(g.vertices)
    verdicts: Dict[str, Verdict] = {}
    levels: List[RegionLevel] = []
    while alive:
        h = _remaining(g, alive)
        settled = None
        pending: Dict[str, Verdict] = {}
        for vertex in h.vertices:
            verdict = decide(h.with_initial(vertex), nf, nu, eps, node_budget, hints.get(vertex))
            logger.debug(f"Level {len(levels)}: vertex {vertex!r} is {verdict.kind.value}")
            if verdict.kind is VerdictKind.YES:
                settled = (vertex, verdict)
                break
            pending[vertex] = verdict
        if settled is None:
            verdicts.update(pending)
            break
        vertex, verdict = settled
        region, choices = attractor(h, Player.P1, [vertex])
        ordered = tuple(v for v in h.vertices if v in region)
        levels.append(RegionLevel(vertex, tuple(h.vertices), ordered, choices, verdict.strategy))
        for member in ordered:
            verdicts[member] = verdict if member == vertex else Verdict(VerdictKind.YES, nu, verdict.interval)
        alive -= region
        logger.info(f"Level {len(levels)}: {vertex!r} attracts {len(ordered)} vertices")

    result = WinningRegion(nu, {v: verdicts[v] for v in g.vertices}, levels)
    if levels:
        result.strategy = assemble_region_strategy(g, levels)
    return result


def assemble_region_strategy(g: GameGraph, levels: Sequence[RegionLevel]) -> MooreStrategy:
    """
    One strategy for every settled vertex.

    In memory ``("attr",)`` the minimizer follows the attractor of its
    vertex's level; leaving a level's settled vertex starts that level's
    strategy in memory ``("play", level, m)``. Leaving a level's graph, which
    only leads into earlier levels, returns to ``("attr",)``.
    """
    level_of = {v: i for i, level in enumerate(levels) for v in level.attractor}
    memory: List = [ATTRACT]
    next_moves: Dict = {}
    updates: Dict = {}
    for i, level in enumerate(levels):
        for vertex, edge_id in level.attractor_strategy.choices:
            next_moves[(ATTRACT, vertex)] = edge_id
        inside = set(level.vertices)
        sigma = level.strategy
        for m in sigma.memory:
            memory.append(("play", i, m))
        if g.owner(level.vertex) is Player.P1:
            next_moves[(ATTRACT, level.vertex)] = sigma.next_edge(sigma.initial, level.vertex)
        for edge_id in g.out_edge_ids(level.vertex):
            target = g.edges[edge_id].target
            if target in inside:
                updates[(ATTRACT, edge_id)] = ("play", i, sigma.next_state(sigma.initial, edge_id))
        for (m, vertex), edge_id in sigma.next_moves.items():
            next_moves[(("play", i, m), vertex)] = edge_id
        for m in sigma.memory:
            for edge_id, edge in g.edges.items():
                if edge.source not in inside:
                    continue
                if edge.target in inside:
                    target_state = ("play", i, sigma.next_state(m, edge_id))
                else:
                    target_state = ATTRACT
                if target_state != ("play", i, m):
                    updates[(("play", i, m), edge_id)] = target_state
    logger.debug(f"Region strategy over {len(levels)} levels with {len(memory)} memory states")
    return MooreStrategy(tuple(memory), ATTRACT, next_moves, updates)


def _interval_at(args) -> ValueInterval:
    h, vertex, nf, eps, node_budget = args
    return inf_value(h.with_initial(vertex), nf, eps, node_budget)


def _widen(interval: ValueInterval, floor: Optional[ValueInterval]) -> ValueInterval:
    if floor is None:
        return interval
    hi = max(interval.hi, floor.hi)
    witness = interval.witness if hi == interval.hi else None
    return ValueInterval(max(interval.lo, floor.lo), hi, witness, None, interval.trace + [f"floor={floor}"])


def value_region(g: GameGraph, nf: NormalFormExpression, eps: Fraction,
                 node_budget: int = config.BNB_NODE_BUDGET, jobs: int = config.DEFAULT_JOBS) -> ValueRegion:
    """
    Value interval of every vertex.

    Each level computes ``I[v] = max(inf_value((H, v)), floor)`` for every
    remaining vertex, settles the attractor of the vertex with the smallest
    hi (then vertex order) and raises the floor to its interval.

    Args:
        jobs: Worker processes for the per-vertex intervals of a level
    """
    alive = set(g.vertices)
    floor: Optional[ValueInterval] = None
    intervals: Dict[str, ValueInterval] = {}
    levels = []
    while alive:
        h = _remaining(g, alive)
        tasks = [(h, v, nf, eps, node_budget) for v in h.vertices]
        if jobs > 1 and len(tasks) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                raw = list(pool.map(_interval_at, tasks))
        else:
            raw = [_interval_at(task) for task in tasks]
        candidates = {v: _widen(i, floor) for v, i in zip(h.vertices, raw)}
        chosen = min(h.vertices, key=lambda v: (candidates[v].hi, h.order(v)))
        region, _ = attractor(h, Player.P1, [chosen])
        ordered = tuple(v for v in h.vertices if v in region)
        for member in ordered:
            intervals[member] = candidates[chosen]
        levels.append((chosen, ordered))
        floor = candidates[chosen]
        alive -= region
        logger.info(f"Value region {floor} for {len(ordered)} vertices around {chosen!r}")
    return ValueRegion({v: intervals[v] for v in g.vertices}, levels)
