#!/usr/bin/env python3

import logging

from game_test_base import F, P1, normalized, two_component_game, two_loop_expression, two_loop_game
from mpe_games.graphs.product import product
from mpe_games.twoplayer.analyzer import AnalyzerSettings, GameAnalyzer
from mpe_games.twoplayer.intervals import VerdictKind
from mpe_games.twoplayer.regions import value_region, winning_region
from mpe_games.twoplayer.simulation import threshold_switching_simulation
from mpe_games.twoplayer.synthesis import eval_strategy

# Set up logging
logger = logging.getLogger(__name__)


def test_winning_region_all_vertices():
    """Test a threshold every vertex can meet"""
    g = two_component_game()
    nf = normalized("(li 1)", 2)
    region = winning_region(g, nf, F(1), F(0))
    assert region.winning == list(g.vertices)
    assert [level.vertex for level in region.levels] == ["v0", "v1", "v4", "v6"]
    assert region.levels[2].attractor == ("v4", "v5")

    sigma = region.strategy
    sigma.validate(g)
    for vertex in g.vertices:
        assert eval_strategy(g.with_initial(vertex), sigma, nf) <= 1

    logger.info(f"✅ Winning region test passed - {len(region.levels)} levels")


def test_winning_region_partial():
    """Test a threshold only the right-hand component can meet"""
    g = two_component_game()
    nf = normalized("(li 1)", 2)
    region = winning_region(g, nf, F(0), F(0))
    assert region.winning == ["v4", "v5", "v6"]
    for vertex in ("v0", "v1", "v2", "v3"):
        assert region.verdicts[vertex].kind is VerdictKind.NO
    assert region.to_document()["vertices"]["v5"] == "yes"

    for vertex in region.winning:
        assert eval_strategy(g.with_initial(vertex), region.strategy, nf) <= 0

    logger.info("✅ Partial winning region test passed")


def test_value_region():
    """Test per-vertex value intervals"""
    g = two_component_game()
    nf = normalized("(li 1)", 2)
    region = value_region(g, nf, F(0), jobs=1)
    his = {v: region.intervals[v].hi for v in g.vertices}
    assert his == {"v0": 1, "v1": 1, "v2": 1, "v3": 1, "v4": -3, "v5": -3, "v6": -1}
    assert region.levels[0] == ("v4", ("v4", "v5"))
    for interval in region.intervals.values():
        assert interval.lo == interval.hi

    logger.info("✅ Value region test passed")


def test_analyzer_facade():
    """Test the analyzer in both memory modes"""
    g = two_loop_game()
    analyzer = GameAnalyzer(g, two_loop_expression(), AnalyzerSettings(eps=F(0)))
    assert str(analyzer.value()) == "[5, 5]"
    assert analyzer.decide(F(5)).kind is VerdictKind.YES
    assert analyzer.winning(F(5)).winning == ["v"]
    assert analyzer.regions().intervals["v"].hi == 5

    result = analyzer.synthesize()
    assert analyzer.evaluate(result.strategy) == 5
    h = product(g, result.strategy)
    for vertex_id in h.owned_by(P1):
        assert len(h.out_edges(vertex_id)) == 1

    analyzer.set_mode(True)
    assert analyzer.settings.both_finite
    assert analyzer.value().hi == 5

    logger.info("✅ Analyzer test passed")


def test_threshold_switching_simulation():
    """Test the switching play that keeps both averages dipping to the threshold"""
    report = threshold_switching_simulation(10 ** 5)
    assert report.dips == (3, 3)
    assert len(report.switch_points) == sum(report.dips)
    assert report.switch_points == [(1, 0), (8, 1), (56, 0), (392, 1), (2744, 0), (19208, 1)]
    assert report.minimum_after_warmup[0] <= 2
    assert report.minimum_after_warmup[1] <= 2
    # Dips are low prefixes, and so are the steps just before the later ones
    assert report.low_prefixes[0] > report.dips[0]
    assert report.low_prefixes[1] > report.dips[1]

    # The third dip of the first dimension lands exactly at step 2744
    assert threshold_switching_simulation(2743).dips == (2, 2)
    assert threshold_switching_simulation(2744).dips == (3, 2)
    assert report.to_document()["threshold"] == "2"

    logger.info(f"✅ Simulation test passed - dips {report.dips}")
