"""
Two-player analyses for a finite-memory minimizer.
"""

from .analyzer import AnalyzerSettings, GameAnalyzer, prepare_expression
from .intervals import IntervalWitness, LowerBoundCertificate, ValueInterval, Verdict, VerdictKind
from .mixing_search import enumerate_domains, inf_value, verify_interval_witness, verify_lower_bound
from .regions import ValueRegion, WinningRegion, assemble_region_strategy, value_region, winning_region
from .simulation import SimulationReport, threshold_switching_simulation
from .synthesis import SynthesisResult, decide, epsilon_optimal_strategy, eval_strategy, moore_strategies

__all__ = [
    "AnalyzerSettings",
    "GameAnalyzer",
    "prepare_expression",
    "IntervalWitness",
    "LowerBoundCertificate",
    "ValueInterval",
    "Verdict",
    "VerdictKind",
    "enumerate_domains",
    "inf_value",
    "verify_interval_witness",
    "verify_lower_bound",
    "ValueRegion",
    "WinningRegion",
    "assemble_region_strategy",
    "value_region",
    "winning_region",
    "SimulationReport",
    "threshold_switching_simulation",
    "SynthesisResult",
    "decide",
    "epsilon_optimal_strategy",
    "eval_strategy",
    "moore_strategies",
]
