import logging
from fractions import Fraction

from dotenv import load_dotenv, find_dotenv

# Load environment variables
load_dotenv(find_dotenv())

# Set up logging configuration for this module
from mpe_games.utils.logging import setup_logging
setup_logging("INFO")

logger = logging.getLogger(__name__)

from mpe_games.expressions.parser import parse_expression
from mpe_games.graphs.game_graph import Player, build_graph
from mpe_games.graphs.strategies import MooreStrategy
from mpe_games.graphs.structure import reachable_vertices
from mpe_games.reduction.chain import ConstraintSystem5
from mpe_games.twoplayer.analyzer import prepare_expression

P1 = Player.P1
P2 = Player.P2


def F(text) -> Fraction:
    return Fraction(text)


def running_example():
    """
    Four-vertex game in three dimensions.

    v0 and v2 belong to the minimizer, v1 and v3 to the maximizer. Edge ids
    follow the arc order below.
    """
    return build_graph(3, "v0", {"v0": P1, "v1": P2, "v2": P1, "v3": P2}, [
        ("v0", "v1", (1, -2, 3)),
        ("v1", "v2", (-6, 1, 1)),
        ("v2", "v3", (12, 3, 1)),
        ("v2", "v1", (-9, 5, -6)),
        ("v3", "v2", (2, -2, 2)),
        ("v3", "v0", (-3, 4, 7)),
    ])


def alternating_strategy():
    """Two memory states at v2: leave towards v3, then back towards v1."""
    return MooreStrategy(
        memory=(0, 1),
        initial=0,
        next_moves={(0, "v2"): 2, (1, "v2"): 3, (0, "v0"): 0, (1, "v0"): 0},
        updates={(0, 2): 1, (1, 3): 0},
    )


def two_loop_game():
    """A single minimizer vertex with loops (9, 1) and (1, 9)."""
    return build_graph(2, "v", {"v": P1}, [
        ("v", "v", (9, 1)),
        ("v", "v", (1, 9)),
    ])


def two_loop_expression():
    return parse_expression("(max (li 1) (li 2))")


def normalized(expr_text: str, k: int, both_finite: bool = False):
    return prepare_expression(parse_expression(expr_text), k, both_finite)


def two_component_game():
    """
    Maximizer root v0 choosing between two minimizer components.

    The v1..v3 component has cycle averages (1,3), (2,1) and (3,2) among its
    simple cycles; the v4..v6 component reaches (-3,-2), (-2,-1) and (-1,-3).
    """
    owners = {"v0": P2}
    owners.update({f"v{i}": P1 for i in range(1, 7)})
    return build_graph(2, "v0", owners, [
        ("v0", "v1", (0, 0)),
        ("v0", "v4", (0, 0)),
        ("v1", "v2", (1, 3)),
        ("v2", "v3", (1, 3)),
        ("v3", "v1", (1, 3)),
        ("v2", "v2", (3, 2)),
        ("v3", "v3", (2, 1)),
        ("v4", "v5", (-3, -2)),
        ("v5", "v6", (-1, -7)),
        ("v5", "v4", (-3, -2)),
        ("v5", "v5", (-2, -1)),
        ("v6", "v6", (-1, -3)),
    ])


def crossing_game():
    """
    Four vertices with maximizer choices at v1 and v3 and a minimizer loop at v2.

    Realizing strategies on it split both maximizer vertices, so their memory
    is a composition of compositions.
    """
    return build_graph(2, "v0", {"v0": P1, "v1": P2, "v2": P1, "v3": P2}, [
        ("v0", "v2", (0, 0)),
        ("v1", "v3", (6, 0)),
        ("v1", "v0", (0, 2)),
        ("v2", "v2", (1, 5)),
        ("v2", "v1", (3, 1)),
        ("v3", "v1", (0, 6)),
        ("v3", "v2", (4, 4)),
    ])


def random_game(rng, size: int = 4, k: int = 2, minimizer_choices: bool = True, spread: int = 3):
    """
    Random game on v0..v{size-1} in which every vertex has one or two edges.

    Without minimizer_choices every minimizer vertex keeps a single edge, so
    the result is a one-player graph.
    """
    owners = {f"v{i}": rng.choice([P1, P2]) for i in range(size)}
    arcs = []
    for vertex, owner in owners.items():
        count = 1 if owner is P1 and not minimizer_choices else rng.randint(1, 2)
        for _ in range(count):
            weight = tuple(rng.randint(-spread, spread) for _ in range(k))
            arcs.append((vertex, f"v{rng.randrange(size)}", weight))
    return build_graph(k, "v0", owners, arcs)


def closed_walks(g, max_length: int):
    """Edge-id lists of every closed walk of at most max_length edges through a reachable vertex."""
    walks = []
    for start in sorted(reachable_vertices(g), key=g.order):
        stack = [(start, [])]
        while stack:
            vertex, walk = stack.pop()
            if walk and vertex == start:
                walks.append(walk)
            if len(walk) < max_length:
                stack.extend((e.target, walk + [e.id]) for e in g.out_edges(vertex))
    return walks

def satisfiable_system():
    """q1 <= 2 q2, 2 p1 <= 3 p2 and q1 p1 = q2 p2; solved by all ones."""
    return ConstraintSystem5(2, [{1: F(1), 2: F(-2)}], [{1: F(2), 2: F(-3)}], [(1, 1, 2, 2)])


def pinned_system():
    """q1 = 2 q2 and 2 p1 = 3 p2 with q1 p1 = q2 p2 forces p1 = 0, so no positive solution."""
    return ConstraintSystem5(
        2,
        [{1: F(1), 2: F(-2)}, {1: F(-1), 2: F(2)}],
        [{1: F(2), 2: F(-3)}, {1: F(-2), 2: F(3)}],
        [(1, 1, 2, 2)],
    )


def positive_row_system():
    """The single row q1 <= 0 has no positive solution."""
    return ConstraintSystem5(1, [{1: F(1)}], [], [])


def empty_system():
    return ConstraintSystem5(1, [], [], [])
