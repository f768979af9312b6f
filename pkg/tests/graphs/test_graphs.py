#!/usr/bin/env python3

import json
import logging
import random
from collections import Counter
from fractions import Fraction

import pytest

from game_test_base import F, P1, P2, alternating_strategy, running_example, two_component_game, two_loop_game
from mpe_games.exceptions import GameGraphError, StrategyError
from mpe_games.graphs.game_graph import Edge, GameGraph, Vertex, build_graph
from mpe_games.graphs.loader import (
    graph_to_document, parse_graph, strategy_from_document, strategy_to_document,
)
from mpe_games.graphs.product import product, prune_strategy, reachable_pairs
from mpe_games.graphs.strategies import MooreStrategy, memoryless_strategies
from mpe_games.graphs.cycle_bases import eulerian_cycle_sets
from mpe_games.graphs.structure import (
    attractor, cycle_average, max_cycle_mean, reachable_sccs, scc_decompose, simple_cycles,
)

# Set up logging
logger = logging.getLogger(__name__)


def test_graph_invariants():
    """Test that malformed graphs are rejected"""
    with pytest.raises(GameGraphError):
        build_graph(2, "a", {"a": P1, "b": P2}, [("a", "b", (0, 0))])
    with pytest.raises(GameGraphError):
        build_graph(2, "a", {"a": P1}, [("a", "a", (0, 0, 0))])
    with pytest.raises(GameGraphError):
        build_graph(1, "z", {"a": P1}, [("a", "a", (0,))])
    with pytest.raises(GameGraphError):
        GameGraph([Vertex("a", P1), Vertex("a", P2)], [Edge(0, "a", "a", (F(0),))], "a", 1)

    g = running_example()
    assert g.choice_vertices(P1) == ["v2"]
    assert g.choice_vertices(P2) == ["v3"]
    assert g.out_edge_ids("v2") == [2, 3]
    assert g.restrict({"v2": 3}).out_edge_ids("v2") == [3]

    logger.info("✅ Graph invariant test passed")


def test_product_with_two_state_strategy():
    """Test that the product resolves every minimizer choice"""
    g = running_example()
    sigma = alternating_strategy()
    sigma.validate(g)

    full = product(g, sigma, reachable_only=False)
    assert len(full.vertices) == 8
    reachable = product(g, sigma)
    assert len(reachable.vertices) == 7
    assert "v3|0" not in reachable.vertices
    assert reachable.initial == "v0|0"

    for h in (full, reachable):
        for vertex_id in h.owned_by(P1):
            assert len(h.out_edges(vertex_id)) == 1

    # Edge origins point back at the source graph
    for edge in reachable.edges.values():
        original = g.edges[edge.origin]
        assert edge.weight == original.weight
        assert edge.source.split("|")[0] == original.source

    assert len(reachable_pairs(g, sigma)) == 7

    logger.info("✅ Product test passed - 8 pairs in total, 7 reachable")


def test_prune_strategy():
    """Test that unreachable memory states are dropped"""
    g = running_example()
    sigma = MooreStrategy(
        memory=("a", "b", "unused"),
        initial="a",
        next_moves={("a", "v2"): 2, ("b", "v2"): 3, ("a", "v0"): 0, ("b", "v0"): 0, ("unused", "v2"): 2},
        updates={("a", 2): "b", ("b", 3): "a"},
    )
    pruned = prune_strategy(g, sigma)
    assert pruned.size == 2
    assert pruned.memory == (0, 1)
    assert len(product(g, pruned).vertices) == 7

    logger.info("✅ Prune strategy test passed")


def test_strategy_validation():
    """Test that foreign moves and states are rejected"""
    g = running_example()
    with pytest.raises(StrategyError):
        MooreStrategy((0,), 0, {(0, "v1"): 1}).validate(g)
    with pytest.raises(StrategyError):
        MooreStrategy((0,), 0, {(0, "v2"): 0}).validate(g)
    with pytest.raises(StrategyError):
        MooreStrategy((0,), 1).validate(g)
    with pytest.raises(StrategyError):
        MooreStrategy((0,), 0, {(0, "v2"): 2}, {(0, 2): 5}).validate(g)
    with pytest.raises(StrategyError):
        product(g, MooreStrategy((0,), 0, {(0, "v0"): 0}))

    logger.info("✅ Strategy validation test passed")


def test_simple_cycles_and_sccs():
    """Test cycle enumeration and SCC classification"""
    g = running_example()
    cycles = simple_cycles(g)
    assert [c.edges for c in cycles] == [(1, 3), (2, 4), (0, 1, 2, 5)]
    assert cycles[0].average == (F("-15/2"), F(3), F("-5/2"))
    assert cycles[1].average == (F(7), F("1/2"), F("3/2"))
    assert cycles[2].average == (F(1), F("3/2"), F(3))

    components = scc_decompose(g)
    assert len(components) == 1
    assert components[0].terminal and not components[0].trivial

    h = two_component_game()
    components = scc_decompose(h)
    assert [c.vertices for c in components] == [("v0",), ("v1", "v2", "v3"), ("v4", "v5"), ("v6",)]
    assert components[0].trivial and not components[0].terminal
    assert components[1].terminal and not components[2].terminal
    assert components[3].terminal and not components[3].trivial
    assert len(reachable_sccs(h.with_initial("v4"))) == 2

    # Parallel edges give distinct cycles
    parallel = build_graph(1, "a", {"a": P1}, [("a", "a", (1,)), ("a", "a", (2,))])
    assert [c.edges for c in simple_cycles(parallel)] == [(0,), (1,)]

    logger.info("✅ Cycle and SCC test passed")


def test_attractor():
    """Test attractors and the strategies that reach the target"""
    g = running_example()
    region, tau = attractor(g, P1, {"v3"})
    assert region == {"v0", "v1", "v2", "v3"}
    assert tau.choice_map == {"v0": 0, "v2": 2}

    region, tau = attractor(g, P2, {"v0"})
    assert region == {"v0", "v3"}
    assert tau.choice_map == {"v3": 5}

    logger.info("✅ Attractor test passed")


def test_max_cycle_mean():
    """Test the best reachable cycle mean against the listed simple cycles"""
    g = running_example()
    first = {e.id: e.weight[0] for e in g.edges.values()}
    assert max_cycle_mean(g, first) == 7
    assert max_cycle_mean(g, {i: -w for i, w in first.items()}) == F("15/2")

    h = two_component_game()
    gains = {e.id: e.weight[0] for e in h.edges.values()}
    assert max_cycle_mean(h, gains) == 3
    assert max_cycle_mean(h.with_initial("v4"), gains) == -1

    for source in ("v0", "v4"):
        start = h.with_initial(source)
        means = [sum(gains[e] for e in c.edges) / len(c)
                 for component in reachable_sccs(start) if not component.trivial
                 for c in simple_cycles(start, component.vertices)]
        assert max_cycle_mean(start, gains) == max(means)

    logger.info("✅ Max cycle mean test passed")


def test_memoryless_enumeration():
    """Test that every memoryless strategy is listed once"""
    h = two_component_game()
    strategies = list(memoryless_strategies(h, P1))
    # v2 and v3 have two edges each, v5 has three
    assert len(strategies) == 2 * 2 * 3
    assert len({s.choices for s in strategies}) == len(strategies)
    assert len(list(memoryless_strategies(h, P2))) == 2

    logger.info(f"✅ Memoryless enumeration test passed - {len(strategies)} strategies")


def test_cycle_mixture_bases():
    """Test cycle bases and the connected-support rule for realizable mixings"""
    assert cycle_average(running_example(), [1, 3]) == (F("-15/2"), F(3), F("-5/2"))

    [basis] = eulerian_cycle_sets(two_loop_game())
    assert basis.component == ("v",)
    assert basis.columns == ((F(9), F(1)), (F(1), F(9)))
    assert basis.point((F("1/2"), F("1/2"))) == (F(5), F(5))
    assert basis.is_realizable_mixing((F("1/2"), F("1/2")))
    assert not basis.is_realizable_mixing((F("1/2"), F("1/4")))

    # Two loops joined only through the v-w cycle
    g = build_graph(2, "v", {"v": P1, "w": P1}, [
        ("v", "v", (2, 0)),
        ("v", "w", (0, 0)),
        ("w", "v", (0, 0)),
        ("w", "w", (0, 2)),
    ])
    [basis] = eulerian_cycle_sets(g)
    index = {c.edges: i for i, c in enumerate(basis.cycles)}
    assert set(index) == {(0,), (1, 2), (3,)}
    loops = [index[(0,)], index[(3,)]]
    assert not basis.is_connected_family(loops)
    assert basis.is_connected_family(loops + [index[(1, 2)]])
    assert basis.components_of(loops) == sorted([[loops[0]], [loops[1]]])

    logger.info(f"✅ Cycle basis test passed - {basis.size} cycles")


def _random_closed_walk(g, component, rng, min_length):
    inside = set(component)
    start = component[0]
    walk = []
    vertex = start
    while not walk or vertex != start or len(walk) < min_length:
        edge = rng.choice([e for e in g.out_edges(vertex) if e.target in inside])
        walk.append(edge.id)
        vertex = edge.target
    return walk


def _simple_cycle_counts(g, walk):
    """Split a closed walk into simple cycles by cutting at the first repeated vertex."""
    counts = Counter()
    vertices = [g.edges[walk[0]].source]
    edges = []
    for edge_id in walk:
        target = g.edges[edge_id].target
        edges.append(edge_id)
        if target in vertices:
            cut = vertices.index(target)
            cycle = edges[cut:]
            start = cycle.index(min(cycle))
            counts[tuple(cycle[start:] + cycle[:start])] += 1
            del vertices[cut + 1:]
            del edges[cut:]
        else:
            vertices.append(target)
    assert not edges
    return counts


def test_closed_walks_land_on_realizable_mixings():
    """Test that every closed walk average is the point of a connected-support mixing"""
    rng = random.Random(11)
    for g in (running_example(), two_component_game(), two_component_game().with_initial("v4")):
        for basis in eulerian_cycle_sets(g):
            index = {c.edges: i for i, c in enumerate(basis.cycles)}
            for _ in range(25):
                walk = _random_closed_walk(g, basis.component, rng, rng.randint(1, 12))
                counts = _simple_cycle_counts(g, walk)
                mixing = [F(0)] * basis.size
                for edges, count in counts.items():
                    mixing[index[edges]] += Fraction(count * len(edges), len(walk))
                assert basis.is_realizable_mixing(mixing)
                assert basis.point(mixing) == cycle_average(g, walk)

    # A single cycle of the first component is its own unit mixing
    left = eulerian_cycle_sets(two_component_game())[0]
    unit = [F(int(c.edges == (2, 3, 4))) for c in left.cycles]
    assert left.is_realizable_mixing(unit)
    assert left.point(unit) == (F(1), F(3))

    logger.info("✅ Closed walk mixing test passed")


def test_graph_and_strategy_documents():
    """Test the JSON forms of graphs and strategies"""
    g = running_example()
    document = graph_to_document(g)
    assert document["edges"][3] == {"from": "v2", "to": "v1", "weight": ["-9", "5", "-6"]}
    again = parse_graph(json.dumps(document))
    assert graph_to_document(again) == document

    with pytest.raises(GameGraphError) as error:
        parse_graph(json.dumps({"k": 1, "initial": "a", "vertices": [{"id": "a", "owner": 3}], "edges": []}))
    assert "vertices[0].owner" in str(error.value)
    with pytest.raises(GameGraphError):
        parse_graph(json.dumps({"k": 1, "initial": "a", "vertices": [{"id": "a", "owner": 1}],
                                "edges": [{"from": "a", "to": "a", "weight": [0.5]}]}))

    sigma = strategy_from_document({
        "memory": ["0", "1"],
        "initial": "0",
        "next": [
            {"memory": "0", "vertex": "v2", "to": "v3"},
            {"memory": "1", "vertex": "v2", "edge": 3},
            {"memory": "0", "vertex": "v0", "to": "v1"},
            {"memory": "1", "vertex": "v0", "to": "v1"},
        ],
        "update": [{"memory": "0", "edge": 2, "to": "1"}, {"memory": "1", "edge": 3, "to": "0"}],
    }, g)
    assert len(product(g, sigma).vertices) == 7
    assert strategy_from_document(strategy_to_document(sigma), g).next_moves == sigma.next_moves

    with pytest.raises(StrategyError):
        strategy_from_document({"memory": ["0"], "initial": "0",
                                "next": [{"memory": "0", "vertex": "nowhere", "edge": 0}]}, g)

    logger.info("✅ Graph and strategy document test passed")
