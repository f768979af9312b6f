#!/usr/bin/env python3

import logging
import random
from fractions import Fraction

import pytest

from game_test_base import (
    F, P1, P2, closed_walks, crossing_game, normalized, random_game, running_example, two_component_game,
    two_loop_game,
)
from mpe_games.exceptions import InputError, PreconditionError
from mpe_games.geometry.polytope import Polytope, hull_of, member
from mpe_games.graphs.product import product, reachable_pairs
from mpe_games.graphs.strategies import memoryless_strategies
from mpe_games.graphs.structure import cycle_average, simple_cycles
from mpe_games.realizability.synthesis import (
    MODE_SECOND, compose_strategies, lasso_strategy, realizes, realizing_strategy, strategy_hull, target_facets,
)
from mpe_games.realizability.witness import is_realizable, mixture_counts
from mpe_games.twoplayer.mixing_search import inf_value

# Set up logging
logger = logging.getLogger(__name__)

SEGMENT = Polytope.of([(2, 2), ("-5/2", "-3/2")])
ORIGIN = Polytope.of([(0, 0)])
SQUARE = Polytope.of([(0, 0), (2, 0), (0, 2), (2, 2)])


def test_realizable_segment():
    """Test that a segment touching both components is realizable"""
    g = two_component_game()
    result = is_realizable(g, SEGMENT)
    assert result.realizable
    assert len(result.witnesses) == 2

    left, right = result.witnesses
    assert set(left.component) == {"v1", "v2", "v3"}
    assert set(right.component) == {"v4", "v5"}
    for witness in result.witnesses:
        assert sum(witness.mixing) == 1
        assert all(x > 0 for x in witness.mixing)
        assert member(witness.point, SEGMENT).contains

    # The right component can only reach the segment at the midpoint of its two cycles
    assert right.point == (F("-5/2"), F("-3/2"))

    logger.info("✅ Realizable segment test passed")


def test_unrealizable_point():
    """Test that the origin is blocked by the first maximizer choice"""
    g = two_component_game()
    result = is_realizable(g, ORIGIN)
    assert not result.realizable
    assert result.blocking.choice_map == {"v0": 0}
    assert "blocking_tau" in result.to_document()

    with pytest.raises(PreconditionError):
        realizing_strategy(g, ORIGIN)
    with pytest.raises(InputError):
        is_realizable(g, Polytope.of([(0, 0, 0)]))

    logger.info("✅ Unrealizable point test passed")


def test_lasso_strategy():
    """Test the lasso strategy on a single vertex with two loops"""
    g = two_loop_game()
    target = Polytope.of([(5, 5)])
    witness = is_realizable(g, target).witnesses[0]
    assert witness.mixing == (F("1/2"), F("1/2"))
    assert witness.loop_counts() == (1, 1)
    assert sorted(witness.circuit()) == [0, 1]

    sigma = lasso_strategy(g, witness)
    assert sigma.size == 2
    assert strategy_hull(g, sigma).points == ((F(5), F(5)),)
    assert realizes(g, sigma, target)

    logger.info("✅ Lasso strategy test passed")


def test_mixture_counts():
    """Test integer repetition counts for cycles of different lengths"""
    cycles = simple_cycles(running_example())
    # Cycles of length 2, 2 and 4 mixed 1/4, 1/4, 1/2
    counts = mixture_counts(cycles, (F("1/4"), F("1/4"), F("1/2")))
    assert counts == (1, 1, 1)
    counts = mixture_counts(cycles[:2], (F("2/3"), F("1/3")))
    assert counts == (2, 1)

    logger.info("✅ Mixture count test passed")


def test_realizing_strategy_with_maximizer_choice():
    """Test the composed strategy on the two-component game"""
    g = two_component_game()
    sigma = realizing_strategy(g, SEGMENT)
    sigma.validate(g)
    assert realizes(g, sigma, SEGMENT)

    h = product(g, sigma)
    for vertex_id in h.vertices:
        if h.owner(vertex_id) is P1:
            assert len(h.out_edges(vertex_id)) == 1

    hull = strategy_hull(g, sigma)
    for point in hull.points:
        assert member(point, SEGMENT).contains

    logger.info(f"✅ Realizing strategy test passed - {sigma.size} memory states")


def test_compose_strategies():
    """Test the mode switch at a maximizer vertex"""
    g = two_component_game()
    left = realizing_strategy(g.without_edges([1]), Polytope.of([(2, 2)]))
    right = realizing_strategy(g.without_edges([0]), Polytope.of([("-5/2", "-3/2")]))
    composed = compose_strategies(right, left, 0, 1, g)
    assert composed.initial[2] == MODE_SECOND
    assert composed.size <= 2 * left.size * right.size
    assert set(composed.memory) == {m for _, m in reachable_pairs(g, composed)}
    assert realizes(g, composed, SEGMENT)
    assert not realizes(g, composed, Polytope.of([(2, 2)]))

    with pytest.raises(InputError):
        compose_strategies(right, left, 0, 2, g)

    logger.info("✅ Compose strategies test passed")


def test_realizing_hull_is_exact_for_single_component():
    """Test that a single realizable point gives a strategy with exactly that average"""
    g = two_component_game().with_initial("v1").subgraph(["v1", "v2", "v3"])
    sigma = realizing_strategy(g, Polytope.of([(2, 2)]))
    assert strategy_hull(g, sigma).points == ((Fraction(2), Fraction(2)),)

    logger.info("✅ Single component realization test passed")


def test_nested_split_realization():
    """Test realizing a value witness when both maximizer vertices must be split"""
    g = crossing_game()
    nf = normalized("(max (li 1) (li 2))", 2)
    interval = inf_value(g, nf, F("1/2"))
    target = hull_of(interval.witness.points)

    sigma = realizing_strategy(g, target)
    sigma.validate(g)
    assert realizes(g, sigma, target)
    assert set(sigma.memory) == {m for _, m in reachable_pairs(g, sigma)}

    # The whole cycle-average hull is realizable too and needs no search
    everything = hull_of([c.average for c in simple_cycles(g)])
    assert realizes(g, realizing_strategy(g, everything), everything)

    logger.info(f"✅ Nested split realization test passed - {sigma.size} memory states for {interval}")


def _is_closed_walk_of(g, tau, walk) -> bool:
    choices = tau.choice_map
    for edge_id, following in zip(walk, walk[1:] + walk[:1]):
        edge = g.edges[edge_id]
        if edge.target != g.edges[following].source:
            return False
        if choices.get(edge.source, edge_id) != edge_id:
            return False
    return True


def test_realizability_against_closed_walks():
    """Test realizability on random games against closed walks of every maximizer strategy"""
    rng = random.Random(17)
    for trial in range(12):
        g = random_game(rng, size=3)
        if trial % 2 == 0:
            averages = [c.average for c in simple_cycles(g)]
            poly = hull_of(rng.sample(averages, min(2, len(averages))))
        else:
            poly = Polytope.of([(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(2)])

        hits = {}
        for tau in memoryless_strategies(g, P2):
            walks = closed_walks(g.restrict(tau.choice_map), 6)
            hits[tau.choices] = any(member(cycle_average(g, w), poly).contains for w in walks)

        result = is_realizable(g, poly)
        if all(hits.values()):
            assert result.realizable
        if result.realizable:
            for witness in result.witnesses:
                walk = witness.circuit()
                assert _is_closed_walk_of(g, witness.tau, walk)
                assert cycle_average(g, walk) == witness.point
                assert member(witness.point, poly).contains
            assert realizes(g, realizing_strategy(g, poly), poly)
        else:
            assert not hits[result.blocking.choices]

    logger.info("✅ Realizability brute-force test passed - 12 random games")


def test_target_facets():
    """Test facet recovery for full, flat and single-point hulls"""
    assert set(target_facets(SQUARE)) == {((1, 0), 2), ((-1, 0), 0), ((0, 1), 2), ((0, -1), 0)}

    # Inner generators add no facets
    assert set(target_facets(Polytope.of([(0, 0), (2, 0), (1, 1), (0, 2), (2, 2)]))) == set(target_facets(SQUARE))

    diagonal = Polytope.of([(0, 0), (1, 1), (2, 2)])
    assert set(target_facets(diagonal)) == {((-1, 1), 0), ((1, -1), 0), ((-1, -1), 0), ((1, 1), 4)}

    point = Polytope.of([(1, 2)])
    assert set(target_facets(point)) == {((1, 0), 1), ((-1, 0), -1), ((0, 1), 2), ((0, -1), -2)}

    # Every generator satisfies every inequality; a point just outside breaks one
    triangle = Polytope.of([(0, 0, 0), (3, 0, 1), (0, 3, 2)])
    inequalities = target_facets(triangle)
    for p in triangle.points:
        assert all(sum(a * x for a, x in zip(normal, p)) <= bound for normal, bound in inequalities)
    outside = (F(-1), F(0), F(0))
    assert any(sum(a * x for a, x in zip(normal, outside)) > bound for normal, bound in inequalities)

    logger.info(f"✅ Target facet test passed - {len(inequalities)} inequalities for a flat triangle")
