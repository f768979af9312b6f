"""
Game value tool implementation for MPE Games.
"""

import logging
from typing import Any, Dict, Optional

from ..exceptions import BudgetExceededError, InputError
from ..reports import value_report
from ..server import mcp
from .common import analyzer_from_text, mode_name

# Set up logging
logger = logging.getLogger(__name__)


@mcp.tool()
async def game_value(
    game_json: str,
    expression: str,
    eps: Optional[str] = None,
    both_finite: bool = False
) -> Dict[str, Any]:
    """
    Interval around the value the minimizer can guarantee with finite memory.

    Args:
        game_json: Game graph in the JSON graph format
        expression: Expression text, e.g. "(max (li 1) (li 2))"
        eps: Precision as a rational string, e.g. "1/100"
        both_finite: Treat lim-sup atoms as lim-inf (both players finite-memory)

    Returns:
        The json value report: lo, hi, witness points and lower-bound certificate
    """

    try:
        logger.info(f"Game value requested: expression={expression}, eps={eps}, both_finite={both_finite}")
        analyzer = analyzer_from_text(game_json, expression, eps, both_finite)
        interval = analyzer.value()
        logger.info(f"Game value completed: {interval}")
        return value_report(interval, mode_name(both_finite)).document

    except InputError as e:
        logger.error(f"Invalid input for game value: {e}")
        raise Exception(f"Game value input invalid: {e}")
    except BudgetExceededError as e:
        logger.error(f"Budget exceeded in game value: {e}")
        raise Exception(f"Game value ran out of budget at {e.interval}: {e}")
    except Exception as e:
        logger.error(f"Unexpected error in game value: {e}")
        raise Exception(f"Game value failed: {e}")
