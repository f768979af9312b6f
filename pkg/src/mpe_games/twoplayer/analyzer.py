"""
GameAnalyzer: one object bundling a graph, an expression and the settings.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Sequence

from .. import config
from ..expressions.ast import Expression, liminf_only_rewrite
from ..expressions.normal_form import NormalFormExpression, normalize
from ..graphs.game_graph import GameGraph
from ..graphs.strategies import MooreStrategy
from ..utils.rationals import parse_rational
from .intervals import ValueInterval, Verdict
from .mixing_search import inf_value
from .regions import ValueRegion, WinningRegion, value_region, winning_region
from .synthesis import SynthesisResult, decide, epsilon_optimal_strategy, eval_strategy

# Get logger for this module
logger = logging.getLogger(__name__)


def prepare_expression(expr: Expression, k: int, both_finite: bool = False) -> NormalFormExpression:
    """
    Normalize an expression for analysis.

    When both players use finite memory every play is ultimately periodic, so
    lim-sup and lim-inf coincide. The normal form's atoms then all become
    lim-inf atoms, which makes the maximizer commit to a single mixture.
    """
    nf = normalize(expr, k)
    if not both_finite:
        return nf
    return NormalFormExpression(tuple(liminf_only_rewrite(t) for t in nf.terms), nf.dimension_map, nf.source_k)


@dataclass
class AnalyzerSettings:
    eps: Fraction = field(default_factory=lambda: parse_rational(config.DEFAULT_EPS))
    both_finite: bool = False
    node_budget: int = config.BNB_NODE_BUDGET
    enum_budget: int = config.ENUM_STEP_BUDGET
    jobs: int = config.DEFAULT_JOBS


class GameAnalyzer:
    """
    Facade over the two-player analyses.

    Args:
        graph: Game graph
        expression: Mean-payoff expression over the graph's dimensions
        settings: Precision, mode and budgets
    """

    def __init__(self, graph: GameGraph, expression: Expression, settings: Optional[AnalyzerSettings] = None):
        self.graph = graph
        self.expression = expression
        self.settings = settings or AnalyzerSettings()
        self.nf = prepare_expression(expression, graph.k, self.settings.both_finite)

    def set_mode(self, both_finite: bool):
        self.settings.both_finite = both_finite
        self.nf = prepare_expression(self.expression, self.graph.k, both_finite)
        logger.debug(f"Mode set to {'both-finite' if both_finite else 'minimizer-finite'}")

    def _at(self, vertex: Optional[str]) -> GameGraph:
        return self.graph if vertex is None else self.graph.with_initial(vertex)

    def value(self, vertex: Optional[str] = None) -> ValueInterval:
        return inf_value(self._at(vertex), self.nf, self.settings.eps, self.settings.node_budget)

    def decide(self, nu: Fraction, vertex: Optional[str] = None,
               hint: Optional[Sequence[Sequence[Fraction]]] = None) -> Verdict:
        return decide(self._at(vertex), self.nf, nu, self.settings.eps, self.settings.node_budget, hint)

    def winning(self, nu: Fraction, hints: Optional[Dict[str, Sequence[Sequence[Fraction]]]] = None) -> WinningRegion:
        return winning_region(self.graph, self.nf, nu, self.settings.eps, self.settings.node_budget, hints)

    def regions(self) -> ValueRegion:
        return value_region(self.graph, self.nf, self.settings.eps, self.settings.node_budget, self.settings.jobs)

    def synthesize(self) -> SynthesisResult:
        return epsilon_optimal_strategy(self.graph, self.nf, self.settings.eps,
                                        self.settings.node_budget, self.settings.enum_budget)

    def evaluate(self, sigma: MooreStrategy) -> Fraction:
        return eval_strategy(self.graph, sigma, self.nf)
