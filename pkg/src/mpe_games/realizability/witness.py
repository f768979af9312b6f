"""
Deciding whether a vector set is realizable.

A set V is realizable when some finite-memory minimizer strategy keeps every
simple-cycle average of the product inside CONV(V). This holds iff for every
memoryless strategy tau of the maximizer, some cyclic path of G^tau has its
average in CONV(V). A cyclic path average is a mixture of the simple cycles
of one SCC whose support is a connected cycle family, so each tau is decided
by LP feasibility plus support refinement.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from ..exceptions import InputError
from ..geometry.lp import LinearProgram, Sense
from ..geometry.polytope import Polytope
from ..graphs.cycle_bases import CycleMixtureBasis, eulerian_cycle_sets
from ..graphs.game_graph import GameGraph, Player
from ..graphs.strategies import MemorylessStrategy, memoryless_strategies
from ..graphs.structure import Cycle

# Get logger for this module
logger = logging.getLogger(__name__)

Vector = Tuple[Fraction, ...]


@dataclass(frozen=True)
class RealizabilityWitness:
    """A mixture of a connected cycle family of G^tau landing in CONV(V)."""
    tau: MemorylessStrategy
    component: Tuple[str, ...]
    cycles: Tuple[Cycle, ...]
    mixing: Tuple[Fraction, ...]
    point: Vector

    def loop_counts(self) -> Tuple[int, ...]:
        """Smallest integer repetition counts whose closed walk averages to the point."""
        return mixture_counts(self.cycles, self.mixing)

    def circuit(self, start: Optional[str] = None) -> List[int]:
        """Edge ids of one closed walk realizing the mixture exactly."""
        return eulerian_walk(self.cycles, self.loop_counts(), start)

    def to_document(self) -> Dict:
        return {
            "tau": {v: e for v, e in self.tau.choices},
            "cycles": [list(c.edges) for c in self.cycles],
            "mixing": [str(x) for x in self.mixing],
            "point": [str(x) for x in self.point],
        }


@dataclass
class RealizabilityResult:
    realizable: bool
    witnesses: List[RealizabilityWitness] = field(default_factory=list)
    blocking: Optional[MemorylessStrategy] = None

    def to_document(self) -> Dict:
        document: Dict = {"realizable": self.realizable,
                          "witnesses": [w.to_document() for w in self.witnesses]}
        if self.blocking is not None:
            document["blocking_tau"] = {v: e for v, e in self.blocking.choices}
        return document


def mixture_counts(cycles: Sequence[Cycle], mixing: Sequence[Fraction]) -> Tuple[int, ...]:
    """
    Integer cycle counts n_c with ``n_c * |c|`` proportional to the mixing.

    Traversing cycle c exactly n_c times gives a closed walk whose average is
    ``sum(mixing_c * Avg(c))``.
    """
    ratios = [Fraction(x) / len(c) for c, x in zip(cycles, mixing)]
    scale = lcm(*(r.denominator for r in ratios))
    counts = [int(r * scale) for r in ratios]
    common = 0
    for n in counts:
        common = gcd(common, n)
    return tuple(n // common for n in counts)


def eulerian_walk(cycles: Sequence[Cycle], counts: Sequence[int], start: Optional[str] = None) -> List[int]:
    """
    Closed walk using cycle c exactly counts[c] times.

    Args:
        cycles: A connected cycle family
        counts: Positive repetition counts
        start: Vertex the walk starts from; defaults to the first cycle's first vertex

    Returns:
        Edge ids in traversal order
    """
    multigraph = nx.MultiDiGraph()
    copies: Dict[int, int] = {}
    for cycle, count in zip(cycles, counts):
        for _ in range(count):
            for source, edge_id, target in zip(cycle.vertices, cycle.edges,
                                               cycle.vertices[1:] + cycle.vertices[:1]):
                copy = copies.get(edge_id, 0)
                copies[edge_id] = copy + 1
                multigraph.add_edge(source, target, key=(edge_id, copy))
    origin = cycles[0].vertices[0] if start is None else start
    return [key[0] for _, _, key in nx.eulerian_circuit(multigraph, source=origin, keys=True)]


def _mixture_program(basis: CycleMixtureBasis, allowed: Sequence[int], poly: Polytope):
    lp = LinearProgram("mixture")
    lam = {c: lp.add_variable(f"l{c}") for c in allowed}
    theta = [lp.add_variable(f"t{j}") for j in range(len(poly.points))]
    lp.add_row({n: 1 for n in lam.values()}, Sense.EQ, 1, "sum[l]")
    lp.add_row({n: 1 for n in theta}, Sense.EQ, 1, "sum[t]")
    for d in range(poly.dimension):
        coefficients = {lam[c]: basis.cycles[c].average[d] for c in allowed}
        for j, p in enumerate(poly.points):
            coefficients[theta[j]] = coefficients.get(theta[j], 0) - p[d]
        lp.add_row(coefficients, Sense.EQ, 0, f"dim{d}")
    return lp, lam


def find_mixture(basis: CycleMixtureBasis, poly: Polytope,
                 allowed: Optional[Sequence[int]] = None) -> Optional[Tuple[Tuple[int, ...], Tuple[Fraction, ...]]]:
    """
    Find a mixing with connected support whose point lies in the polytope.

    The cycles that are positive in some feasible mixing are found by one LP
    per cycle. If they form a connected family, the average of the
    maximizers is feasible and has exactly that support. Otherwise every
    realizable mixing lives inside one connected component, and each
    component is searched on its own.

    Returns:
        (support cycle indices, positive mixing over them) or None
    """
    allowed = list(range(basis.size)) if allowed is None else list(allowed)
    lp, lam = _mixture_program(basis, allowed, poly)
    if not lp.find_feasible().is_optimal:
        return None
    positive: Dict[int, Dict[int, Fraction]] = {}
    for c in allowed:
        result = lp.maximize({lam[c]: 1})
        if result.objective > 0:
            positive[c] = {i: result.values[lam[i]] for i in allowed}
    support = sorted(positive)
    if basis.is_connected_family(support):
        mixing = tuple(sum((positive[m][c] for m in support), Fraction(0)) / len(support) for c in support)
        return tuple(support), mixing
    for part in basis.components_of(support):
        found = find_mixture(basis, poly, part)
        if found is not None:
            return found
    return None


def witness_for(tau: MemorylessStrategy, h: GameGraph, poly: Polytope) -> Optional[RealizabilityWitness]:
    """First witness over the bases of h = G^tau, in SCC order."""
    for basis in eulerian_cycle_sets(h):
        found = find_mixture(basis, poly)
        if found is None:
            continue
        support, mixing = found
        cycles = tuple(basis.cycles[c] for c in support)
        point = CycleMixtureBasis(basis.component, cycles).point(mixing)
        return RealizabilityWitness(tau, basis.component, cycles, mixing, point)
    return None


def is_realizable(g: GameGraph, poly: Polytope) -> RealizabilityResult:
    """
    Decide whether CONV(poly) is realizable in g.

    Args:
        g: Game graph
        poly: Target polytope in the graph's dimension

    Returns:
        RealizabilityResult with one witness per maximizer memoryless
        strategy, or the first strategy for which none exists
    """
    if poly.dimension != g.k:
        raise InputError(f"polytope has dimension {poly.dimension}, graph has {g.k}")
    witnesses = []
    for tau in memoryless_strategies(g, Player.P2):
        witness = witness_for(tau, g.restrict(tau.choice_map), poly)
        if witness is None:
            logger.info(f"Not realizable: blocked by {tau.describe(g)}")
            return RealizabilityResult(False, witnesses, tau)
        witnesses.append(witness)
    logger.info(f"Realizable with {len(witnesses)} witnesses")
    return RealizabilityResult(True, witnesses)
