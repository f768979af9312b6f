"""
Realizing strategies.

Without maximizer choices, a witness mixture is realized by a lasso: walk to
the witness family, then repeat one closed walk forever. Maximizer choice
vertices are removed one at a time: for a vertex v with edges e1 and e2,
strategies for G - {e1} and G - {e2} are combined by a mode switch.
"""

import itertools
import logging
from collections import deque
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

import networkx as nx
import sympy as sp

from ..exceptions import CertificateError, InputError, PreconditionError
from ..geometry.polytope import Polytope, hull_of
from ..graphs.game_graph import GameGraph, Player
from ..graphs.product import product, prune_strategy, reachable_pairs
from ..graphs.strategies import MooreStrategy
from ..graphs.structure import max_cycle_mean, reachable_sccs, simple_cycles
from .witness import RealizabilityWitness, is_realizable

# Get logger for this module
logger = logging.getLogger(__name__)

MODE_FIRST = 1
MODE_SECOND = 2

Vector = Tuple[Fraction, ...]
Halfspace = Tuple[Vector, Fraction]


def _prefix_to(g: GameGraph, targets: Sequence[str]) -> Tuple[str, List[int]]:
    """Shortest edge path from the initial vertex to the nearest target (ties by vertex order)."""
    skeleton = g.to_networkx()
    distances = nx.single_source_shortest_path_length(skeleton, g.initial)
    reachable = [v for v in targets if v in distances]
    if not reachable:
        raise PreconditionError("witness family is not reachable from the initial vertex")
    start = min(reachable, key=lambda v: (distances[v], g.order(v)))
    vertices = nx.shortest_path(skeleton, g.initial, start)
    edges = []
    for source, target in zip(vertices, vertices[1:]):
        edges.append(min(e.id for e in g.out_edges(source) if e.target == target))
    return start, edges


def lasso_strategy(g: GameGraph, witness: RealizabilityWitness) -> MooreStrategy:
    """
    Strategy that walks to the witness family and repeats its closed walk.

    Memory state i means the i-th edge of prefix + circuit is next; the last
    circuit edge leads back to the first circuit position.

    Raises:
        PreconditionError: If g still offers the maximizer a choice on the way
    """
    family = [v for c in witness.cycles for v in c.vertices]
    start, prefix = _prefix_to(g, list(dict.fromkeys(family)))
    circuit = witness.circuit(start)
    sequence = prefix + circuit
    next_moves: Dict[Tuple[int, str], int] = {}
    updates: Dict[Tuple[int, int], int] = {}
    for position, edge_id in enumerate(sequence):
        source = g.edges[edge_id].source
        if g.owner(source) is Player.P1:
            next_moves[(position, source)] = edge_id
        elif len(g.out_edges(source)) > 1:
            raise PreconditionError(f"maximizer vertex {source!r} still has a choice")
        following = position + 1 if position + 1 < len(sequence) else len(prefix)
        updates[(position, edge_id)] = following
    strategy = MooreStrategy(tuple(range(len(sequence))), 0, next_moves, updates)
    logger.debug(f"Lasso strategy: prefix {len(prefix)}, circuit {len(circuit)}, counts {witness.loop_counts()}")
    return strategy


def compose_strategies(sigma1: MooreStrategy, sigma2: MooreStrategy, e1: int, e2: int,
                       g: GameGraph) -> MooreStrategy:
    """
    Combine strategies for G - {e1} and G - {e2} at a shared maximizer vertex.

    Memory is (m1, m2, mode). Play starts with sigma2 and sigma1's memory
    parked at the first state in which sigma1 meets the vertex. While sigma2
    is active, traversing e2 (absent from its graph) hands control to sigma1;
    while sigma1 is active, traversing e1 hands control back. Only the active
    component's memory is updated; the switching edge itself updates the
    component that takes over.

    Args:
        sigma1: Strategy on G - {e1}
        sigma2: Strategy on G - {e2}
        e1: First edge of the split vertex
        e2: Second edge of the split vertex
        g: The full graph

    Returns:
        The combined strategy over the triples reachable from the initial
        vertex, in breadth-first discovery order

    Raises:
        InputError: If e1 and e2 leave different vertices
    """
    if g.edges[e1].source != g.edges[e2].source:
        raise InputError(f"edges {e1} and {e2} leave different vertices")
    vertex = g.edges[e1].source
    g1 = g.without_edges([e1])
    parked = next((m for v, m in reachable_pairs(g1, sigma1) if v == vertex), sigma1.initial)

    def step(triple: Tuple, edge_id: int) -> Tuple:
        m1, m2, mode = triple
        if mode == MODE_SECOND and edge_id == e2:
            return sigma1.next_state(m1, edge_id), m2, MODE_FIRST
        if mode == MODE_FIRST and edge_id == e1:
            return m1, sigma2.next_state(m2, edge_id), MODE_SECOND
        if mode == MODE_FIRST:
            return sigma1.next_state(m1, edge_id), m2, mode
        return m1, sigma2.next_state(m2, edge_id), mode

    initial = (parked, sigma2.initial, MODE_SECOND)
    states = [initial]
    known = {initial}
    seen = {(g.initial, initial)}
    queue = deque(seen)
    next_moves: Dict = {}
    updates: Dict = {}
    while queue:
        at, triple = queue.popleft()
        if g.owner(at) is Player.P1:
            active, state = (sigma1, triple[0]) if triple[2] == MODE_FIRST else (sigma2, triple[1])
            edge_id = active.next_edge(state, at)
            if edge_id is None:
                continue
            next_moves[(triple, at)] = edge_id
            moves = [edge_id]
        else:
            moves = g.out_edge_ids(at)
        for edge_id in moves:
            target = step(triple, edge_id)
            if target != triple:
                updates[(triple, edge_id)] = target
            pair = (g.edges[edge_id].target, target)
            if pair not in seen:
                seen.add(pair)
                queue.append(pair)
                if target not in known:
                    known.add(target)
                    states.append(target)
    logger.debug(f"Composed memory: {len(states)} reachable of {2 * sigma1.size * sigma2.size} triples")
    return MooreStrategy(tuple(states), initial, next_moves, updates)


def _rational(value: Fraction) -> sp.Rational:
    return sp.Rational(value.numerator, value.denominator)


def _nullspace(rows: Sequence[Vector], dim: int) -> List[Vector]:
    """Basis of the vectors orthogonal to every row."""
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(dim)) for i in range(dim)]
    matrix = sp.Matrix([[_rational(x) for x in row] for row in rows])
    return [tuple(Fraction(int(x.p), int(x.q)) for x in column) for column in matrix.nullspace()]


def _dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def _scaled(normal: Vector, bound: Fraction) -> Halfspace:
    lead = next(abs(x) for x in normal if x != 0)
    return tuple(x / lead for x in normal), bound / lead


def target_facets(poly: Polytope) -> List[Halfspace]:
    """
    Inequalities ``a . x <= b`` whose common solutions are exactly CONV(poly).

    Directions orthogonal to the affine hull contribute an equality as a pair
    of opposite inequalities. Inside the affine hull of rank r, every r-subset
    of generators spanning a supporting hyperplane gives one facet, so the
    cost grows with C(len(points), r).
    """
    origin = poly.points[0]
    differences = [tuple(x - y for x, y in zip(p, origin)) for p in poly.points[1:]]
    found: List[Halfspace] = []
    for normal in _nullspace(differences, poly.dimension):
        bound = _dot(normal, origin)
        found.append(_scaled(normal, bound))
        found.append(_scaled(tuple(-x for x in normal), -bound))

    nonzero = [d for d in differences if any(d)]
    if not nonzero:
        return found
    span = [tuple(Fraction(int(x.p), int(x.q)) for x in row)
            for row in sp.Matrix([[_rational(x) for x in d] for d in nonzero]).rowspace()]
    rank = len(span)
    for subset in itertools.combinations(poly.points, rank):
        base = subset[0]
        rows = [tuple(_dot(b, tuple(x - y for x, y in zip(s, base))) for b in span) for s in subset[1:]]
        coefficients = _nullspace(rows, rank)
        if len(coefficients) != 1:
            continue
        normal = tuple(sum((c * b[d] for c, b in zip(coefficients[0], span)), Fraction(0))
                       for d in range(poly.dimension))
        bound = _dot(normal, base)
        sides = [_dot(normal, p) - bound for p in poly.points]
        if all(s <= 0 for s in sides):
            candidate = _scaled(normal, bound)
        elif all(s >= 0 for s in sides):
            candidate = _scaled(tuple(-x for x in normal), -bound)
        else:
            continue
        if candidate not in found:
            found.append(candidate)
    logger.debug(f"Target hull of {len(poly.points)} points has {len(found)} facet inequalities")
    return found


def strategy_hull(g: GameGraph, sigma: MooreStrategy) -> Polytope:
    """
    Hull of the simple-cycle averages of every reachable SCC of g^sigma.

    Lists every simple cycle of the product; meant for small strategies.
    """
    h = product(g, sigma)
    averages = []
    for component in reachable_sccs(h):
        if not component.trivial:
            averages.extend(c.average for c in simple_cycles(h, component.vertices))
    return hull_of(averages)


def realizes(g: GameGraph, sigma: MooreStrategy, poly: Polytope) -> bool:
    """
    Decide whether every cycle of g^sigma reachable from the start averages inside CONV(poly).

    One max-mean-cycle computation per facet of poly, so the check stays
    polynomial in the size of the product.
    """
    if poly.dimension != g.k:
        raise InputError(f"target polytope has dimension {poly.dimension}, expected {g.k}")
    h = product(g, sigma)
    for normal, bound in target_facets(poly):
        gains = {e.id: sum((a * w for a, w in zip(normal, e.weight)), Fraction(0)) for e in h.edges.values()}
        if max_cycle_mean(h, gains) > bound:
            return False
    return True


def _vertex_reached(g: GameGraph, sigma: MooreStrategy, vertex: str) -> bool:
    return any(v == vertex for v, _ in reachable_pairs(g, sigma))


def _realize(g: GameGraph, poly: Polytope, depth: int) -> MooreStrategy:
    choices = g.choice_vertices(Player.P2)
    if not choices:
        result = is_realizable(g, poly)
        if not result.realizable:
            raise PreconditionError("target polytope is not realizable")
        return prune_strategy(g, lasso_strategy(g, result.witnesses[0]))

    vertex = choices[0]
    e1, e2 = g.out_edge_ids(vertex)[:2]
    g1, g2 = g.without_edges([e1]), g.without_edges([e2])
    logger.debug(f"{'  ' * depth}Splitting maximizer vertex {vertex!r} on edges {e1}/{e2}")
    sigma2 = _realize(g2, poly, depth + 1)
    if not _vertex_reached(g2, sigma2, vertex):
        return sigma2
    sigma1 = _realize(g1, poly, depth + 1)
    if not _vertex_reached(g1, sigma1, vertex):
        return sigma1
    return prune_strategy(g, compose_strategies(sigma1, sigma2, e1, e2, g))


def realizing_strategy(g: GameGraph, poly: Polytope, check: bool = True) -> MooreStrategy:
    """
    Build a finite-memory strategy whose product stays inside CONV(poly).

    Args:
        g: Game graph
        poly: Realizable target polytope
        check: Re-verify containment on the result

    Raises:
        PreconditionError: If poly is not realizable in g
        CertificateError: If the post-hoc containment check fails
    """
    if not is_realizable(g, poly).realizable:
        raise PreconditionError("target polytope is not realizable")
    sigma = _realize(g, poly, 0)
    if check and not realizes(g, sigma, poly):
        raise CertificateError("realizing strategy leaves the target polytope")
    logger.info(f"Realizing strategy with {sigma.size} memory states")
    return sigma
