"""
Constraint reduction tool implementation for MPE Games.
"""

import logging
from typing import Any, Dict

from ..exceptions import InputError
from ..reduction import constraints_to_game, parse_constraint_system, reduce_chain
from ..reports import reduction_report
from ..server import mcp

# Set up logging
logger = logging.getLogger(__name__)


@mcp.tool()
async def reduce_constraints(constraints_json: str) -> Dict[str, Any]:
    """
    Build the game instance for a constraint system or a polynomial.

    Args:
        constraints_json: Constraint system or {"polynomial": ...} document

    Returns:
        The reduced system, the game graph, the expression text and nu = 0
    """

    try:
        logger.info("Constraint reduction requested")
        game = constraints_to_game(reduce_chain(parse_constraint_system(constraints_json)))
        logger.info(f"Constraint reduction completed: k={game.graph.k}")
        return reduction_report(game).document

    except InputError as e:
        logger.error(f"Invalid constraint system: {e}")
        raise Exception(f"Constraint reduction input invalid: {e}")
    except Exception as e:
        logger.error(f"Unexpected error in constraint reduction: {e}")
        raise Exception(f"Constraint reduction failed: {e}")
