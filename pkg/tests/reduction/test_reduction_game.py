#!/usr/bin/env python3

import logging

import pytest

from game_test_base import (
    F, P1, P2, empty_system, normalized, pinned_system, positive_row_system, satisfiable_system,
)
from mpe_games.exceptions import PreconditionError
from mpe_games.expressions.parser import format_expression
from mpe_games.geometry.polytope import hull_of
from mpe_games.oneplayer.solver import value_of_point_set
from mpe_games.realizability.witness import is_realizable
from mpe_games.reduction.chain import ConstraintSystem5
from mpe_games.reduction.game import (
    S0, constraints_to_game, loop_weight, mixture_point, mixture_points, mixtures_from_witnesses,
    readback_assignment, witness_mixtures,
)
from mpe_games.twoplayer.analyzer import prepare_expression
from mpe_games.twoplayer.intervals import VerdictKind
from mpe_games.twoplayer.regions import winning_region
from mpe_games.twoplayer.synthesis import decide

# Set up logging
logger = logging.getLogger(__name__)

ONES = ((F(1), F(1)), (F(1), F(1)))
# Wide enough that the search stops after the root box of every domain
COARSE = F(1000)


def _weights(values):
    return tuple(F(x) for x in values)


def test_game_layout():
    """Test vertices, edge order and dimension count of the generated game"""
    game = constraints_to_game(satisfiable_system())
    graph, expr, nu = game
    assert graph.k == 9
    assert nu == 0
    assert list(graph.vertices) == [S0, "a1", "a2", "b1", "b2"]
    assert graph.owner(S0) is P2
    assert all(graph.owner(v) is P1 for v in ("a1", "a2", "b1", "b2"))
    assert len(graph.edges) == 12

    a, b = game.sides["a"], game.sides["b"]
    assert (a.entry, a.first_loop, a.bridge, a.loops, a.exit) == (0, 1, 2, [3, 4], 5)
    assert (b.entry, b.first_loop, b.bridge, b.loops, b.exit) == (6, 7, 8, [9, 10], 11)
    assert game.side_of_choice(6) == "b"
    with pytest.raises(PreconditionError):
        game.side_of_choice(3)

    assert graph.edges[0].weight == _weights([0, 0, 1, 1, 0, 0, 0, 0, 0])
    assert graph.edges[1].weight == _weights([1, -1, 0, 0, 0, 0, 0, 0, 0])
    assert graph.edges[3].weight == _weights([-1, 1, -1, 0, 1, -1, 0, 1, 0])
    assert graph.edges[4].weight == _weights([-1, 1, 0, -1, -2, 0, 1, 0, -1])
    assert graph.edges[9].weight == _weights([-1, 1, -1, 0, 2, 0, -1, 0, 1])
    assert graph.edges[10].weight == _weights([-1, 1, 0, -1, -3, 1, 0, -1, 0])

    assert format_expression(expr) == (
        "(max (li 1) (li 2) (li 3) (li 4) (li 5) (min (li 6) (li 7)) (min (li 8) (li 9)))"
    )
    assert game.base == 5

    logger.info(f"✅ Game layout test passed - k={graph.k}, {len(graph.edges)} edges")


def test_coinciding_bilinear_patterns_add_up():
    """Test a product whose indices repeat on one side"""
    system = ConstraintSystem5(1, [], [], [(1, 1, 1, 1)])
    assert loop_weight(system, "a", 1)[-4:] == [F(-1), F(1), F(1), F(-1)]
    assert loop_weight(system, "b", 1)[-4:] == [F(1), F(-1), F(-1), F(1)]

    logger.info("✅ Coinciding pattern test passed")


def test_row_dimensions_keep_coefficient_signs():
    """Test that loop weights carry linear-row coefficients with their own sign"""
    system = satisfiable_system()
    row = 2 + system.n
    assert [loop_weight(system, "a", i)[row] for i in (1, 2)] == [F(1), F(-2)]
    assert [loop_weight(system, "b", i)[row] for i in (1, 2)] == [F(2), F(-3)]

    # q = (2, 1) meets q1 - 2 q2 <= 0 with equality, so the row average is zero
    assert 2 * loop_weight(system, "a", 1)[row] + loop_weight(system, "a", 2)[row] == 0

    logger.info("✅ Row sign test passed")


def test_witness_mixtures_and_readback():
    """Test mixtures built from a solution and the assignment read back from them"""
    game = constraints_to_game(satisfiable_system())
    mixtures = witness_mixtures(game, ONES)
    a_side = mixtures[0]
    assert a_side[(0, 2, 5)] == F("1/5")
    assert a_side[(1,)] == F("2/5")
    assert a_side[(3,)] == a_side[(4,)] == F("1/5")
    assert sum(a_side.values()) == 1

    nf = prepare_expression(game.expression, game.graph.k)
    points = mixture_points(game, mixtures)
    assert value_of_point_set(points, nf) == 0
    assert mixture_point(game, a_side)[:5] == _weights([0, 0, "-2/15", "-2/15", "-1/5"])

    q, p = readback_assignment(game, mixtures)
    assert q == (F("1/2"), F("1/2")) and p == (F("1/2"), F("1/2"))
    assert game.system.satisfied_by((q, p))

    # Scaling is undone up to a common factor per family
    q, _ = readback_assignment(game, witness_mixtures(game, ((F(2), F(4)), (F(1), F(1)))))
    assert q[1] == 2 * q[0]

    with pytest.raises(PreconditionError):
        witness_mixtures(game, ((F(0), F(1)), (F(1), F(1))))
    with pytest.raises(PreconditionError):
        readback_assignment(game, {0: {(0, 2, 5): F(1)}, 6: {(6, 8, 11): F(1)}})

    logger.info("✅ Witness mixture and readback test passed")


def test_satisfiable_system_is_won():
    """Test that a solution gives the minimizer a winning strategy at threshold 0"""
    game = constraints_to_game(satisfiable_system())
    nf = prepare_expression(game.expression, game.graph.k)
    points = mixture_points(game, witness_mixtures(game, ONES))

    result = is_realizable(game.graph, hull_of(points))
    assert result.realizable
    q, p = readback_assignment(game, mixtures_from_witnesses(game, result.witnesses))
    assert game.system.satisfied_by((q, p))

    verdict = decide(game.graph, nf, game.nu, F("1/100"), hint=points)
    assert verdict.kind is VerdictKind.YES
    assert verdict.strategy_value <= 0

    logger.info(f"✅ Satisfiable system test passed - strategy with {verdict.strategy.size} memory states")


def test_empty_system_winning_region():
    """Test that every vertex wins when there are no constraints"""
    game = constraints_to_game(empty_system())
    assert game.graph.k == 3
    nf = prepare_expression(game.expression, game.graph.k)
    points = mixture_points(game, witness_mixtures(game, ((F(1),), (F(1),))))
    assert value_of_point_set(points, nf) == 0

    region = winning_region(game.graph, nf, game.nu, F("1/100"), hints={S0: points})
    assert region.winning == [S0, "a1", "a2", "b1", "b2"]

    logger.info("✅ Empty system winning region test passed")


def test_positive_row_has_positive_value():
    """Test that q1 <= 0 keeps every a-side mixture above the threshold"""
    game = constraints_to_game(positive_row_system())
    nf = prepare_expression(game.expression, game.graph.k)
    a = game.sides["a"]
    # Best a-side mixture: equal loop weights and the entry cycle taking the rest
    best = {a.entry_cycle: F("3/4"), (a.first_loop,): F("1/8"), (a.loops[0],): F("1/8")}
    assert value_of_point_set([mixture_point(game, best)], nf) == F("1/8")

    verdict = decide(game.graph, nf, game.nu, COARSE)
    assert verdict.kind in (VerdictKind.NO, VerdictKind.UNKNOWN)
    assert verdict.interval.hi > 0
    assert verdict.strategy is None

    logger.info("✅ Positive row test passed")


def test_pinned_system_is_not_won():
    """Test a system whose rows force p1 = 0"""
    system = pinned_system()
    assert not system.satisfied_by(ONES)
    game = constraints_to_game(system)
    nf = prepare_expression(game.expression, game.graph.k)
    verdict = decide(game.graph, nf, game.nu, COARSE)
    assert verdict.kind in (VerdictKind.NO, VerdictKind.UNKNOWN)
    assert verdict.interval.hi > 0
    assert verdict.interval.lo <= verdict.interval.hi

    logger.info("✅ Pinned system test passed")


def test_reduction_expression_normalizes():
    """Test that the generated expression is already a single-term normal form over atoms"""
    game = constraints_to_game(satisfiable_system())
    nf = normalized(format_expression(game.expression), game.graph.k)
    assert len(nf.terms) == 5 + 2
    assert nf.evaluate((F(0),) * 9) == 0

    logger.info("✅ Reduction expression test passed")
