"""
Game instance for a ConstraintSystem5.

The graph has five vertices: the maximizer vertex s0 chooses between an
a-side (a1, a2) and a b-side (b1, b2) owned by the minimizer. a2 and b2
carry one self-loop per variable. Dimensions, 1-based:

- 1, 2: balance; the a1/b1 loops weigh (1, -1) and every a2/b2 loop (-1, 1)
- 3 .. 2+n: visits; the entry edges out of s0 weigh 1 and loop i weighs -1 in 2+i
- 2+n+1 .. 2+n+t1: linear rows; a2 loop i carries the coefficient of qi in
  q-row j, b2 loop i the coefficient of pi in p-row j
  with its own sign (+alpha), so a row sum(alpha_i * qi) <= 0 reads directly
  as a non-positive average in that dimension
- 2+n+t1+4j+1 .. +4: bilinear constraint j, paired as (1, 2) and (3, 4)

A mixture of the a-side cycles with weights proportional to
(1, sum(q), q1, ..., qn) keeps the balance, visit and row dimensions
non-positive exactly when q satisfies the q-rows, and symmetrically for p.
Two such mixtures jointly keep every MIN pair non-positive exactly when the
bilinear products hold, so the minimizer wins at threshold 0 with a
finite-memory strategy iff the system has a positive solution.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Sequence, Tuple

from ..exceptions import PreconditionError
from ..expressions.ast import Expression, Max, Min, lim_inf
from ..graphs.game_graph import GameGraph, Player, build_graph
from ..graphs.structure import cycle_average
from ..realizability.witness import RealizabilityWitness
from .chain import ConstraintSystem5, PairAssignment

# Get logger for this module
logger = logging.getLogger(__name__)

S0 = "s0"
SIDES = ("a", "b")

CycleKey = Tuple[int, ...]
Mixture = Dict[CycleKey, Fraction]


@dataclass
class SideLayout:
    """Edge ids of one side of the game."""
    entry: int
    first_loop: int
    bridge: int
    loops: List[int] = field(default_factory=list)
    exit: int = -1

    @property
    def entry_cycle(self) -> CycleKey:
        return (self.entry, self.bridge, self.exit)


@dataclass
class ReductionGame:
    """The generated game with its edge layout; ``nu`` is always 0."""
    system: ConstraintSystem5
    graph: GameGraph
    expression: Expression
    nu: Fraction
    sides: Dict[str, SideLayout]

    def __iter__(self):
        return iter((self.graph, self.expression, self.nu))

    @property
    def base(self) -> int:
        """Dimensions before the bilinear blocks."""
        return 2 + self.system.n + self.system.t1

    def side_of_choice(self, edge_id: int) -> str:
        for name, layout in self.sides.items():
            if layout.entry == edge_id:
                return name
        raise PreconditionError(f"edge {edge_id} does not leave {S0}")


def _bilinear_pattern(i: int, quadruple: Tuple[int, int, int, int], side: str) -> List[int]:
    a, j, c, l = quadruple
    pattern = [0, 0, 0, 0]
    # qa * pj = qc * pl: a2 loops a and c, b2 loops l and j
    if side == "a":
        hits = ((a, (-1, 0, 1, 0)), (c, (0, 1, 0, -1)))
    else:
        hits = ((l, (1, 0, -1, 0)), (j, (0, -1, 0, 1)))
    for index, weights in hits:
        if i == index:
            pattern = [x + w for x, w in zip(pattern, weights)]
    return pattern


def loop_weight(system: ConstraintSystem5, side: str, i: int) -> List[Fraction]:
    """
    Weight of the i-th self-loop (1-based) of a2 or b2.

    Row dimensions take the row coefficient of variable i unchanged (+alpha).
    """
    n = system.n
    q_rows, p_rows = system.padded_rows()
    weight = [Fraction(-1), Fraction(1)] + [Fraction(-1) if d == i else Fraction(0) for d in range(1, n + 1)]
    rows = q_rows if side == "a" else p_rows
    weight.extend(Fraction(row.get(i, 0)) for row in rows)
    for quadruple in system.bilinear:
        weight.extend(Fraction(x) for x in _bilinear_pattern(i, quadruple, side))
    return weight


def reduction_expression(system: ConstraintSystem5) -> Expression:
    """MAX of the first 2+n+t1 lim-inf atoms and the MIN pairs of the bilinear blocks."""
    base = 2 + system.n + system.t1
    children: List[Expression] = [lim_inf(d) for d in range(1, base + 1)]
    for pair in range(2 * system.t2):
        children.append(Min((lim_inf(base + 2 * pair + 1), lim_inf(base + 2 * pair + 2))))
    return Max(tuple(children))


def constraints_to_game(system: ConstraintSystem5) -> ReductionGame:
    """
    Build the five-vertex game, its expression and threshold 0.

    The shorter linear-row family is padded with all-zero rows so that both
    families have t1 rows.

    Returns:
        ReductionGame; unpacks as ``(graph, expression, nu)``
    """
    n = system.n
    k = 2 + n + system.t1 + 4 * system.t2
    zero = [0] * k
    entry = [0, 0] + [1] * n + [0] * (k - 2 - n)
    first_loop = [1, -1] + [0] * (k - 2)
    owners = {S0: Player.P2, "a1": Player.P1, "a2": Player.P1, "b1": Player.P1, "b2": Player.P1}
    arcs = []
    sides: Dict[str, SideLayout] = {}
    for side in SIDES:
        one, two = f"{side}1", f"{side}2"
        layout = SideLayout(entry=len(arcs), first_loop=len(arcs) + 1, bridge=len(arcs) + 2)
        arcs.extend([(S0, one, entry), (one, one, first_loop), (one, two, zero)])
        for i in range(1, n + 1):
            layout.loops.append(len(arcs))
            arcs.append((two, two, loop_weight(system, side, i)))
        layout.exit = len(arcs)
        arcs.append((two, S0, zero))
        sides[side] = layout

    graph = build_graph(k, S0, owners, arcs)
    logger.info(f"Reduction game: n={n}, t1={system.t1}, t2={system.t2}, k={k}, {len(graph.edges)} edges")
    return ReductionGame(system, graph, reduction_expression(system), Fraction(0), sides)


def _side_mixture(layout: SideLayout, values: Sequence[Fraction]) -> Mixture:
    scale = min(values)
    values = [v / scale for v in values]
    total = sum(values, Fraction(0))
    denominator = 1 + 2 * total
    mixture: Mixture = {layout.entry_cycle: 1 / denominator, (layout.first_loop,): total / denominator}
    for edge_id, v in zip(layout.loops, values):
        mixture[(edge_id,)] = v / denominator
    return mixture


def witness_mixtures(game: ReductionGame, assignment: PairAssignment) -> Dict[int, Mixture]:
    """
    Cycle mixtures for both maximizer choices built from a positive assignment.

    Each family is scaled so its smallest value is 1; with ``D = 1 + 2*sum``
    the entry cycle gets 1/D, the first loop sum/D and loop i value_i/D.

    Returns:
        Mixture per entry edge of s0, keyed by cycle edge ids

    Raises:
        PreconditionError: If the assignment is not positive or has the wrong length
    """
    q, p = [Fraction(x) for x in assignment[0]], [Fraction(x) for x in assignment[1]]
    n = game.system.n
    if len(q) != n or len(p) != n or any(x <= 0 for x in q + p):
        raise PreconditionError(f"witness mixtures need {n} positive values per family")
    return {
        game.sides["a"].entry: _side_mixture(game.sides["a"], q),
        game.sides["b"].entry: _side_mixture(game.sides["b"], p),
    }


def mixture_point(game: ReductionGame, mixture: Mapping[CycleKey, Fraction]) -> Tuple[Fraction, ...]:
    """Average vector of a cycle mixture."""
    point = [Fraction(0)] * game.graph.k
    for edges, weight in mixture.items():
        average = cycle_average(game.graph, edges)
        point = [x + weight * a for x, a in zip(point, average)]
    return tuple(point)


def mixture_points(game: ReductionGame, mixtures: Mapping[int, Mapping[CycleKey, Fraction]]) -> List[Tuple[Fraction, ...]]:
    """Points in entry-edge order, ready to use as a decision hint."""
    return [mixture_point(game, mixtures[edge_id]) for edge_id in sorted(mixtures)]


def mixtures_from_witnesses(game: ReductionGame, witnesses: Sequence[RealizabilityWitness]) -> Dict[int, Mixture]:
    """Regroup realizability witnesses by the maximizer's choice at s0."""
    mixtures: Dict[int, Mixture] = {}
    for witness in witnesses:
        choice = witness.tau.choice_map[S0]
        mixtures[choice] = {cycle.edges: weight for cycle, weight in zip(witness.cycles, witness.mixing)}
    return mixtures


def _read_side(layout: SideLayout, mixture: Mapping[CycleKey, Fraction]) -> Tuple[Fraction, ...]:
    anchor = Fraction(mixture.get((layout.first_loop,), 0))
    if anchor <= 0:
        raise PreconditionError(f"mixture does not use the loop on edge {layout.first_loop}")
    return tuple(Fraction(mixture.get((edge_id,), 0)) / anchor for edge_id in layout.loops)


def readback_assignment(game: ReductionGame, mixtures: Mapping[int, Mapping[CycleKey, Fraction]]) -> PairAssignment:
    """
    Recover (q, p) from winning mixtures, normalized by the first-loop weights.

    The result is proportional, family by family, to the assignment the
    mixtures were built from.
    """
    q = _read_side(game.sides["a"], mixtures[game.sides["a"].entry])
    p = _read_side(game.sides["b"], mixtures[game.sides["b"].entry])
    logger.debug(f"Read back q={q}, p={p}")
    return q, p
