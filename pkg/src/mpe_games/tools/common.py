"""
Shared parsing for MCP tools.
"""

from typing import Optional

from ..expressions.parser import parse_expression
from ..graphs.loader import parse_graph
from ..twoplayer.analyzer import AnalyzerSettings, GameAnalyzer
from ..utils.rationals import parse_rational


def analyzer_from_text(game_json: str, expression: str, eps: Optional[str] = None,
                       both_finite: bool = False) -> GameAnalyzer:
    settings = AnalyzerSettings(both_finite=both_finite)
    if eps is not None:
        settings.eps = parse_rational(eps, "eps")
    return GameAnalyzer(parse_graph(game_json), parse_expression(expression), settings)


def mode_name(both_finite: bool) -> str:
    return "both-finite" if both_finite else "p1-finite"
