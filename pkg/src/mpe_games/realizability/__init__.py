"""
Realizable vector sets and the strategies that realize them.
"""

from .synthesis import (
    compose_strategies, lasso_strategy, realizes, realizing_strategy, strategy_hull, target_facets,
)
from .witness import (
    RealizabilityResult,
    RealizabilityWitness,
    eulerian_walk,
    find_mixture,
    is_realizable,
    mixture_counts,
    witness_for,
)

__all__ = [
    "compose_strategies",
    "lasso_strategy",
    "realizes",
    "realizing_strategy",
    "strategy_hull",
    "target_facets",
    "RealizabilityResult",
    "RealizabilityWitness",
    "eulerian_walk",
    "find_mixture",
    "is_realizable",
    "mixture_counts",
    "witness_for",
]
