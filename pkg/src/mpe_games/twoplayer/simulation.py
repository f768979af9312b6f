"""
Threshold-switching play on the two-loop game.

One minimizer vertex carries the loops (9, 1) and (1, 9). The infinite-memory
strategy takes (1, 9) while the running average of the first dimension is
above the threshold, then (9, 1) while the running average of the second
dimension is above it, and repeats. Both running averages fall to the
threshold infinitely often, so both lim-inf averages are at most the
threshold, below what any finite-memory strategy can guarantee.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

# Get logger for this module
logger = logging.getLogger(__name__)

FIRST_LOOP = (9, 1)
SECOND_LOOP = (1, 9)


@dataclass
class SimulationReport:
    steps: int
    threshold: Fraction
    dips: Tuple[int, int]
    low_prefixes: Tuple[int, int]
    switch_points: List[Tuple[int, int]] = field(default_factory=list)
    minimum_after_warmup: Tuple[Fraction, Fraction] = (Fraction(0), Fraction(0))
    final_average: Tuple[Fraction, Fraction] = (Fraction(0), Fraction(0))

    def to_document(self) -> Dict:
        return {
            "steps": self.steps,
            "threshold": str(self.threshold),
            "dips": list(self.dips),
            "low_prefixes": list(self.low_prefixes),
            "switch_points": [list(p) for p in self.switch_points],
            "minimum_after_warmup": [str(x) for x in self.minimum_after_warmup],
            "final_average": [str(x) for x in self.final_average],
        }


def threshold_switching_simulation(steps: int, threshold: Fraction = Fraction(2),
                                   tolerance: Fraction = Fraction(1, 100),
                                   warmup: int = 100,
                                   loops: Sequence[Tuple[int, int]] = (FIRST_LOOP, SECOND_LOOP)) -> SimulationReport:
    """
    Run the switching strategy for a number of steps in exact arithmetic.

    Args:
        steps: Number of edges to take
        threshold: Switching threshold on the running averages
        tolerance: Prefixes with average at most threshold + tolerance count as low
        warmup: Prefix length below which minima are not recorded
        loops: Weights of the (9, 1)-style and (1, 9)-style loops

    Returns:
        SimulationReport; ``dips[d]`` counts the switches triggered by
        dimension d, ``low_prefixes[d]`` the low prefixes of dimension d
    """
    threshold = Fraction(threshold)
    limit = threshold + Fraction(tolerance)
    first, second = loops
    totals = [0, 0]
    # Follow the (1, 9) loop while dimension 0 is high, the (9, 1) loop while dimension 1 is high
    watching = 0
    dips = [0, 0]
    low = [0, 0]
    switches: List[Tuple[int, int]] = []
    minimum = [None, None]
    for n in range(1, steps + 1):
        weight = second if watching == 0 else first
        totals[0] += weight[0]
        totals[1] += weight[1]
        for d in (0, 1):
            if totals[d] <= limit * n:
                low[d] += 1
            if n >= warmup:
                average = Fraction(totals[d], n)
                if minimum[d] is None or average < minimum[d]:
                    minimum[d] = average
        if totals[watching] <= threshold * n:
            dips[watching] += 1
            switches.append((n, watching))
            watching = 1 - watching
    report = SimulationReport(
        steps, threshold, (dips[0], dips[1]), (low[0], low[1]), switches,
        (minimum[0] or Fraction(0), minimum[1] or Fraction(0)),
        (Fraction(totals[0], steps), Fraction(totals[1], steps)),
    )
    logger.info(f"Simulated {steps} steps: dips {report.dips}, low prefixes {report.low_prefixes}")
    return report
