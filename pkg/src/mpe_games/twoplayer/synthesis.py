"""
Strategy evaluation, three-valued decisions and epsilon-optimal synthesis.
"""

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence

from .. import config
from ..exceptions import BudgetExceededError, CertificateError
from ..expressions.normal_form import NormalFormExpression
from ..geometry.polytope import hull_of
from ..graphs.game_graph import GameGraph, Player
from ..graphs.loader import strategy_to_document
from ..graphs.product import product
from ..graphs.strategies import MooreStrategy
from ..oneplayer.solver import solve, value_of_point_set
from ..realizability.synthesis import realizing_strategy
from ..realizability.witness import is_realizable
from .intervals import ValueInterval, Verdict, VerdictKind
from .mixing_search import inf_value

# Get logger for this module
logger = logging.getLogger(__name__)


def eval_strategy(g: GameGraph, sigma: MooreStrategy, nf: NormalFormExpression) -> Fraction:
    """
    Value the maximizer achieves against sigma: the one-player value of g^sigma.

    Raises:
        StrategyError: If sigma has no move at a reachable minimizer pair
    """
    return solve(product(g, sigma), nf)


def moore_strategies(g: GameGraph, max_memory: Optional[int] = None) -> Iterator[MooreStrategy]:
    """
    Enumerate minimizer Moore strategies by memory size, then table order.

    Memory states are 0..n-1 with initial state 0. Without max_memory the
    enumeration never ends.
    """
    owned = g.owned_by(Player.P1)
    edge_ids = sorted(g.edges)
    for size in itertools.count(1):
        if max_memory is not None and size > max_memory:
            return
        move_keys = [(m, v) for m in range(size) for v in owned]
        move_options = [g.out_edge_ids(v) for _, v in move_keys]
        update_keys = [(m, e) for m in range(size) for e in edge_ids] if size > 1 else []
        for moves in itertools.product(*move_options):
            next_moves = dict(zip(move_keys, moves))
            for targets in itertools.product(range(size), repeat=len(update_keys)):
                updates = {key: t for key, t in zip(update_keys, targets) if t != key[0]}
                yield MooreStrategy(tuple(range(size)), 0, next_moves, updates)


@dataclass
class SynthesisResult:
    strategy: MooreStrategy
    value: Fraction
    interval: ValueInterval
    method: str
    notes: List[str] = field(default_factory=list)

    def to_document(self) -> Dict:
        return {
            "method": self.method,
            "value": str(self.value),
            "interval": self.interval.to_document(),
            "memory_size": self.strategy.size,
            "strategy": strategy_to_document(self.strategy),
        }


def _from_points(g: GameGraph, points: Sequence, nf: NormalFormExpression):
    """
    Realize the hull of points and return the value it guarantees.

    Containment of every reachable cycle average in the hull is verified by
    realizing_strategy, so the hull value bounds the strategy value without
    evaluating the product.
    """
    sigma = realizing_strategy(g, hull_of(points))
    return sigma, value_of_point_set(points, nf)


def epsilon_optimal_strategy(g: GameGraph, nf: NormalFormExpression, eps: Fraction,
                             node_budget: int = config.BNB_NODE_BUDGET,
                             enum_budget: int = config.ENUM_STEP_BUDGET) -> SynthesisResult:
    """
    Build a strategy whose value is within eps of the infimum.

    The strategy realizing the interval witness is tried first; its value is
    at most hi. Otherwise Moore strategies are enumerated until one reaches
    ``hi + eps``.

    Raises:
        BudgetExceededError: When neither route succeeds within the budgets
    """
    eps = Fraction(eps)
    interval = inf_value(g, nf, eps, node_budget)
    target = interval.hi + eps
    if interval.witness is not None:
        try:
            sigma, value = _from_points(g, interval.witness.points, nf)
            if value <= target:
                logger.info(f"Synthesized strategy with {sigma.size} memory states, value {value}")
                return SynthesisResult(sigma, value, interval, "witness")
            logger.warning(f"Witness strategy has value {value} above {target}")
        except CertificateError as e:
            logger.warning(f"Witness strategy failed verification: {e}")

    for step, sigma in enumerate(moore_strategies(g)):
        if step >= enum_budget:
            break
        value = eval_strategy(g, sigma, nf)
        if value <= target:
            logger.info(f"Enumeration found a strategy after {step + 1} steps, value {value}")
            return SynthesisResult(sigma, value, interval, "enumeration")
    raise BudgetExceededError(f"no strategy within {target} after {enum_budget} enumeration steps", interval)


def decide(g: GameGraph, nf: NormalFormExpression, nu: Fraction, eps: Fraction,
           node_budget: int = config.BNB_NODE_BUDGET,
           hint: Optional[Sequence[Sequence[Fraction]]] = None) -> Verdict:
    """
    Three-valued answer to whether the minimizer can keep the value at most nu.

    Args:
        g: Game graph, decided from its initial vertex
        nf: Normalized expression
        nu: Threshold
        eps: Interval width at which the search gives up on deciding
        node_budget: Branch-and-bound budget
        hint: Optional candidate point set tried before the search

    Returns:
        YES with a verified strategy, NO when lo > nu, otherwise UNKNOWN
    """
    nu = Fraction(nu)
    if hint:
        if value_of_point_set(hint, nf) <= nu and is_realizable(g, hull_of(hint)).realizable:
            sigma, value = _from_points(g, hint, nf)
            if value <= nu:
                logger.info(f"Hint decided YES with value {value}")
                return Verdict(VerdictKind.YES, nu, None, sigma, value)

    interval = inf_value(g, nf, eps, node_budget, nu)
    if interval.hi <= nu and interval.witness is not None:
        sigma, value = _from_points(g, interval.witness.points, nf)
        if value > interval.hi:
            raise CertificateError(f"strategy value {value} exceeds witnessed value {interval.hi}")
        return Verdict(VerdictKind.YES, nu, interval, sigma, value)
    if interval.lo > nu:
        return Verdict(VerdictKind.NO, nu, interval)
    return Verdict(VerdictKind.UNKNOWN, nu, interval)
