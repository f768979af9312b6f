"""
Reduction from polynomial constraint systems to mean-payoff expression games.
"""

from .chain import (
    BalancedSystem,
    ConstraintSystem5,
    HomogenizedEquation,
    PolynomialEquation,
    QuadraticSystem,
    extend_through_chain,
    reduce_chain,
)
from .game import (
    ReductionGame,
    constraints_to_game,
    mixture_points,
    mixtures_from_witnesses,
    readback_assignment,
    witness_mixtures,
)
from .loader import dump_constraint_system, load_constraint_system, parse_constraint_system
from .vector_lemma import VectorLemmaReport, vector_lemma_check

__all__ = [
    "BalancedSystem",
    "ConstraintSystem5",
    "HomogenizedEquation",
    "PolynomialEquation",
    "QuadraticSystem",
    "extend_through_chain",
    "reduce_chain",
    "ReductionGame",
    "constraints_to_game",
    "mixture_points",
    "mixtures_from_witnesses",
    "readback_assignment",
    "witness_mixtures",
    "dump_constraint_system",
    "load_constraint_system",
    "parse_constraint_system",
    "VectorLemmaReport",
    "vector_lemma_check",
]
