#!/usr/bin/env python3

import asyncio
import json
import logging

import pytest

from game_test_base import satisfiable_system, two_loop_game
from mpe_games.graphs.loader import graph_to_document
from mpe_games.reduction.loader import dump_constraint_system
from mpe_games.server import setup_server
from mpe_games.tools.game_decide import game_decide
from mpe_games.tools.game_value import game_value
from mpe_games.tools.reduce_constraints import reduce_constraints
from mpe_games.tools.strategy_eval import strategy_eval

# Set up logging
logger = logging.getLogger(__name__)

EXPRESSION = "(max (li 1) (li 2))"
GAME_JSON = json.dumps(graph_to_document(two_loop_game()))
ALTERNATING_JSON = json.dumps({
    "memory": ["0", "1"],
    "initial": "0",
    "next": [{"memory": "0", "vertex": "v", "edge": 0}, {"memory": "1", "vertex": "v", "edge": 1}],
    "update": [{"memory": "0", "edge": 0, "to": "1"}, {"memory": "1", "edge": 1, "to": "0"}],
})


def test_server_registers_tools():
    """Test that setup returns the server with its tools imported"""
    server = setup_server()
    assert server is not None

    logger.info("✅ Server setup test passed")


def test_game_value_tool():
    """Test the value document returned by the tool"""
    document = asyncio.run(game_value(GAME_JSON, EXPRESSION, eps="0"))
    assert document["mode"] == "p1-finite"
    assert (document["interval"]["lo"], document["interval"]["hi"]) == ("5", "5")

    logger.info("✅ Game value tool test passed")


def test_game_decide_tool():
    """Test decisions with and without a hint"""
    document = asyncio.run(game_decide(GAME_JSON, EXPRESSION, "9/2"))
    assert document["verdict"] == "no"

    document = asyncio.run(game_decide(GAME_JSON, EXPRESSION, "5", hint=[["5", "5"]]))
    assert document["verdict"] == "yes"
    assert document["strategy_value"] == "5"

    logger.info("✅ Game decide tool test passed")


def test_strategy_eval_tool():
    """Test exact evaluation of an alternating strategy"""
    document = asyncio.run(strategy_eval(GAME_JSON, ALTERNATING_JSON, EXPRESSION))
    assert document["value"] == "5"

    logger.info("✅ Strategy eval tool test passed")


def test_reduce_constraints_tool():
    """Test the reduction document"""
    document = asyncio.run(reduce_constraints(json.dumps(dump_constraint_system(satisfiable_system()))))
    assert document["k"] == 9
    assert document["nu"] == "0"
    assert document["expression"].startswith("(max (li 1)")

    logger.info("✅ Reduce constraints tool test passed")


def test_tool_input_errors():
    """Test that malformed inputs surface as tool errors"""
    with pytest.raises(Exception, match="input invalid"):
        asyncio.run(game_value(GAME_JSON, "(max (li 1)"))
    with pytest.raises(Exception, match="input invalid"):
        asyncio.run(game_decide(GAME_JSON, EXPRESSION, "x"))
    with pytest.raises(Exception, match="input invalid"):
        asyncio.run(reduce_constraints('{"q_rows": []}'))
