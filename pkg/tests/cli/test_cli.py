#!/usr/bin/env python3

import json
import logging

import pytest

from game_test_base import satisfiable_system, two_loop_game
from mpe_games.graphs.loader import graph_to_document, strategy_to_document
from mpe_games.graphs.strategies import MooreStrategy
from mpe_games import main as cli
from mpe_games.main import EXIT_INPUT_ERROR, EXIT_OK, run
from mpe_games.reduction.loader import dump_constraint_system
from mpe_games.utils.files import dump_json

# Set up logging
logger = logging.getLogger(__name__)

EXPRESSION = "(max (li 1) (li 2))"


@pytest.fixture
def game_file(tmp_path):
    path = tmp_path / "game.json"
    path.write_text(dump_json(graph_to_document(two_loop_game())))
    return str(path)


@pytest.fixture
def alternating_file(tmp_path):
    """Strategy alternating between the two loops."""
    sigma = MooreStrategy(
        memory=(0, 1),
        initial=0,
        next_moves={(0, "v"): 0, (1, "v"): 1},
        updates={(0, 0): 1, (1, 1): 0},
    )
    path = tmp_path / "strategy.json"
    path.write_text(dump_json(strategy_to_document(sigma)))
    return str(path)


def test_value_command(game_file, capsys):
    """Test the value interval printed as text"""
    status = run(["value", game_file, EXPRESSION, "--eps", "0"])
    out = capsys.readouterr().out
    assert status == EXIT_OK
    assert out.splitlines()[0] == "value ∈ [5, 5]"

    logger.info("✅ Value command test passed")


def test_value_command_json(game_file, capsys):
    """Test the JSON report envelope"""
    status = run(["value", game_file, EXPRESSION, "--eps", "0", "--format", "json"])
    document = json.loads(capsys.readouterr().out)
    assert status == EXIT_OK
    assert document["command"] == "value"
    assert document["version"] == 1
    assert document["mode"] == "p1-finite"
    assert (document["interval"]["lo"], document["interval"]["hi"]) == ("5", "5")

    logger.info("✅ JSON value report test passed")


def test_decide_command(game_file, capsys):
    """Test both definite verdicts"""
    assert run(["decide", game_file, EXPRESSION, "--nu", "4"]) == EXIT_OK
    assert capsys.readouterr().out.startswith("verdict: no (nu = 4)")

    assert run(["decide", game_file, EXPRESSION, "--nu", "5", "--eps", "0"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("verdict: yes (nu = 5)")
    assert "guarantees 5" in out

    logger.info("✅ Decide command test passed")


def test_synth_then_eval(game_file, tmp_path, capsys):
    """Test that a synthesized strategy file evaluates to the value"""
    out_path = str(tmp_path / "synth.json")
    assert run(["synth", game_file, EXPRESSION, "--eps", "0", "--out", out_path]) == EXIT_OK
    assert f"strategy written to {out_path}" in capsys.readouterr().out

    assert run(["eval", game_file, out_path, EXPRESSION]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "5"

    logger.info("✅ Synthesis and evaluation command test passed")


def test_eval_command(game_file, alternating_file, capsys):
    """Test evaluating a hand-written strategy"""
    assert run(["eval", game_file, alternating_file, EXPRESSION]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "5"

    assert run(["eval", game_file, alternating_file, "(min (li 1) (li 2))"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "5"

    logger.info("✅ Eval command test passed")


def test_regions_command(game_file, capsys):
    """Test per-vertex values on the single-vertex game"""
    assert run(["regions", game_file, EXPRESSION, "--eps", "0"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "v: value ∈ [5, 5]"

    logger.info("✅ Regions command test passed")


def test_reduce_command(tmp_path, capsys):
    """Test the reduction report and the written game file"""
    constraints = tmp_path / "system.json"
    constraints.write_text(json.dumps(dump_constraint_system(satisfiable_system())))
    game_path = tmp_path / "reduced.json"

    status = run(["reduce", str(constraints), "--format", "json", "--out", str(game_path)])
    document = json.loads(capsys.readouterr().out)
    assert status == EXIT_OK
    assert document["command"] == "reduce"
    assert document["k"] == 9
    assert document["nu"] == "0"
    assert document["system"]["n"] == 2
    assert json.loads(game_path.read_text()) == document["game"]
    assert len(document["game"]["vertices"]) == 5

    logger.info("✅ Reduce command test passed")


@pytest.mark.parametrize("arguments", [
    ["value", "/nonexistent/game.json", EXPRESSION],
    ["value", "GAME", "(max (li 1)"],
    ["value", "GAME", EXPRESSION, "--eps=-1/2"],
    ["value", "GAME", EXPRESSION, "--eps", "1/0"],
    ["decide", "GAME", EXPRESSION, "--nu", "x"],
    ["eval", "GAME", "/nonexistent/strategy.json", EXPRESSION],
])
def test_input_errors(game_file, arguments, capsys):
    """Test that malformed inputs exit with status 1 and a message"""
    arguments = [game_file if a == "GAME" else a for a in arguments]
    assert run(arguments) == EXIT_INPUT_ERROR
    assert capsys.readouterr().err.startswith("error: ")


def test_missing_command(capsys):
    """Test that no subcommand prints usage and fails"""
    assert run([]) == EXIT_INPUT_ERROR
    assert "usage" in capsys.readouterr().out


@pytest.mark.parametrize("error", [ValueError("eps must be nonnegative"), ZeroDivisionError("division by zero")])
def test_stray_errors_exit_with_input_status(game_file, monkeypatch, capsys, error):
    """Test that a plain ValueError or arithmetic error inside a command still exits with status 1"""
    def failing(args):
        raise error

    monkeypatch.setattr(cli, "_execute", failing)
    assert run(["value", game_file, EXPRESSION]) == EXIT_INPUT_ERROR
    assert capsys.readouterr().err.startswith("error: ")

    logger.info(f"✅ Stray {type(error).__name__} test passed")
