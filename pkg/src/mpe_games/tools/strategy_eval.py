"""
Strategy evaluation tool implementation for MPE Games.
"""

import logging
from typing import Any, Dict

from ..exceptions import InputError
from ..graphs.loader import strategy_from_document
from ..reports import evaluation_report
from ..server import mcp
from ..utils.files import parse_json_text
from .common import analyzer_from_text, mode_name

# Set up logging
logger = logging.getLogger(__name__)


@mcp.tool()
async def strategy_eval(
    game_json: str,
    strategy_json: str,
    expression: str,
    both_finite: bool = False
) -> Dict[str, Any]:
    """
    Exact value the maximizer achieves against a minimizer Moore strategy.

    Args:
        game_json: Game graph in the JSON graph format
        strategy_json: Strategy in the JSON strategy format
        expression: Expression text
        both_finite: Treat lim-sup atoms as lim-inf

    Returns:
        {"value": "p/q"} plus the report header fields
    """

    try:
        logger.info(f"Strategy evaluation requested: expression={expression}")
        analyzer = analyzer_from_text(game_json, expression, both_finite=both_finite)
        sigma = strategy_from_document(parse_json_text(strategy_json, "<strategy>"), analyzer.graph)
        value = analyzer.evaluate(sigma)
        logger.info(f"Strategy evaluation completed: {value}")
        return evaluation_report(value, mode_name(both_finite)).document

    except InputError as e:
        logger.error(f"Invalid input for strategy evaluation: {e}")
        raise Exception(f"Strategy evaluation input invalid: {e}")
    except Exception as e:
        logger.error(f"Unexpected error in strategy evaluation: {e}")
        raise Exception(f"Strategy evaluation failed: {e}")
