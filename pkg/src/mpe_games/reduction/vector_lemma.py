"""
Sign pattern of two-generator cones in four dimensions.

For positive a1, a2, b1, b2 and non-negative m, n let
``x = m*(a1*(-1,0,1,0) + a2*(0,1,0,-1)) + n*(b1*(1,0,-1,0) + b2*(0,-1,0,1))``.
``MAX(MIN(x1, x2), MIN(x3, x4)) <= 0`` holds for all m, n exactly when
``b1/a1 = b2/a2``. This is what lets a MIN pair of the reduction game encode
one bilinear equation.
"""

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Tuple

from ..exceptions import CertificateError, InputError

# Get logger for this module
logger = logging.getLogger(__name__)


@dataclass
class VectorLemmaReport:
    ratios_equal: bool
    condition_holds: bool
    samples: int
    violation: Optional[Tuple[Fraction, Fraction, Tuple[Fraction, ...]]] = None

    @property
    def consistent(self) -> bool:
        return self.ratios_equal == self.condition_holds

    def to_document(self) -> Dict:
        document = {"ratios_equal": self.ratios_equal, "condition_holds": self.condition_holds,
                    "samples": self.samples}
        if self.violation is not None:
            m, n, x = self.violation
            document["violation"] = {"m": str(m), "n": str(n), "x": [str(v) for v in x]}
        return document


def combination(alpha1, alpha2, beta1, beta2, m, n) -> Tuple[Fraction, ...]:
    x1 = -m * alpha1 + n * beta1
    x2 = m * alpha2 - n * beta2
    return (x1, x2, -x1, -x2)


def condition(x: Tuple[Fraction, ...]) -> bool:
    return max(min(x[0], x[1]), min(x[2], x[3])) <= 0


def vector_lemma_check(alpha1, alpha2, beta1, beta2, samples: int = 1000, seed: int = 0) -> VectorLemmaReport:
    """
    Check the equivalence on one instance.

    With equal ratios the condition is tested on the boundary pairs
    ``(0, 1)``, ``(1, 0)`` and then random rational (m, n). With unequal
    ratios a violating pair is built directly: ``k = m/n`` strictly between
    the two ratios makes the first two coordinates positive when
    ``b1/a1 > b2/a2`` and the last two otherwise.

    Args:
        alpha1, alpha2, beta1, beta2: Strictly positive rationals
        samples: Number of (m, n) pairs tested when the ratios agree
        seed: Seed of the sampler

    Raises:
        InputError: If an input is not strictly positive
    """
    alpha1, alpha2, beta1, beta2 = (Fraction(v) for v in (alpha1, alpha2, beta1, beta2))
    if min(alpha1, alpha2, beta1, beta2) <= 0:
        raise InputError("vector check needs strictly positive inputs")
    first, second = beta1 / alpha1, beta2 / alpha2

    if first != second:
        k = (first + second) / 2
        m, n = Fraction(k.numerator), Fraction(k.denominator)
        x = combination(alpha1, alpha2, beta1, beta2, m, n)
        if condition(x):
            raise CertificateError(f"constructed pair ({m}, {n}) does not violate the condition")
        logger.debug(f"Ratios {first} and {second} differ; violated at m={m}, n={n}")
        return VectorLemmaReport(False, False, 0, (m, n, x))

    rng = random.Random(seed)
    pairs = [(Fraction(0), Fraction(1)), (Fraction(1), Fraction(0))]
    while len(pairs) < samples:
        pairs.append((Fraction(rng.randint(0, 1000), rng.randint(1, 100)),
                      Fraction(rng.randint(0, 1000), rng.randint(1, 100))))
    for m, n in pairs[:samples]:
        x = combination(alpha1, alpha2, beta1, beta2, m, n)
        if not condition(x):
            logger.warning(f"Condition fails at m={m}, n={n} with equal ratios")
            return VectorLemmaReport(True, False, samples, (m, n, x))
    return VectorLemmaReport(True, True, samples)
