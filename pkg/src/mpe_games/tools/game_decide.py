"""
Threshold decision tool implementation for MPE Games.
"""

import logging
from typing import Any, Dict, List, Optional

from ..exceptions import BudgetExceededError, InputError
from ..reports import verdict_report
from ..server import mcp
from ..utils.rationals import parse_rational, parse_vector
from .common import analyzer_from_text, mode_name

# Set up logging
logger = logging.getLogger(__name__)


@mcp.tool()
async def game_decide(
    game_json: str,
    expression: str,
    nu: str,
    eps: Optional[str] = None,
    hint: Optional[List[List[str]]] = None,
    both_finite: bool = False
) -> Dict[str, Any]:
    """
    Decide whether the minimizer can keep the value at most nu.

    Args:
        game_json: Game graph in the JSON graph format
        expression: Expression text
        nu: Threshold as a rational string
        eps: Precision at which the search gives up with "unknown"
        hint: Optional candidate average vectors tried before the search
        both_finite: Treat lim-sup atoms as lim-inf

    Returns:
        The json decision report with verdict "yes", "no" or "unknown"
    """

    try:
        logger.info(f"Decision requested: expression={expression}, nu={nu}")
        analyzer = analyzer_from_text(game_json, expression, eps, both_finite)
        points = [parse_vector(p, f"hint[{i}]") for i, p in enumerate(hint)] if hint else None
        verdict = analyzer.decide(parse_rational(nu, "nu"), hint=points)
        logger.info(f"Decision completed: {verdict.kind.value}")
        return verdict_report(verdict, mode_name(both_finite)).document

    except InputError as e:
        logger.error(f"Invalid input for decision: {e}")
        raise Exception(f"Decision input invalid: {e}")
    except BudgetExceededError as e:
        logger.error(f"Budget exceeded in decision: {e}")
        raise Exception(f"Decision ran out of budget at {e.interval}: {e}")
    except Exception as e:
        logger.error(f"Unexpected error in decision: {e}")
        raise Exception(f"Decision failed: {e}")
