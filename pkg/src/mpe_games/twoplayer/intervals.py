"""
Result types of the two-player analyses.
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from ..graphs.loader import strategy_to_document
from ..graphs.strategies import MooreStrategy
from ..realizability.witness import RealizabilityWitness

Vector = Tuple[Fraction, ...]


@dataclass(frozen=True)
class IntervalWitness:
    """
    Mixings attaining the upper end of an interval.

    ``witnesses`` holds one realizable mixture per maximizer memoryless
    strategy; the distinct points span the hull whose value is ``value``.
    """
    witnesses: Tuple[RealizabilityWitness, ...]
    value: Fraction

    @property
    def points(self) -> Tuple[Vector, ...]:
        return tuple(dict.fromkeys(w.point for w in self.witnesses))

    def to_document(self) -> Dict[str, Any]:
        return {
            "value": str(self.value),
            "points": [[str(x) for x in p] for p in self.points],
            "mixtures": [w.to_document() for w in self.witnesses],
        }


@dataclass(frozen=True)
class LeafBound:
    domain: int
    path: str
    bound: Fraction


@dataclass(frozen=True)
class LowerBoundCertificate:
    """Leaves of the branch-and-bound tree; every leaf bound is at least ``lo``."""
    lo: Fraction
    domains: Tuple[Tuple, ...]
    leaves: Tuple[LeafBound, ...]

    def to_document(self) -> Dict[str, Any]:
        return {
            "lo": str(self.lo),
            "domains": len(self.domains),
            "leaves": [{"domain": leaf.domain, "path": leaf.path, "bound": str(leaf.bound)}
                       for leaf in self.leaves],
        }


@dataclass
class ValueInterval:
    lo: Fraction
    hi: Fraction
    witness: Optional[IntervalWitness] = None
    certificate: Optional[LowerBoundCertificate] = None
    trace: List[str] = field(default_factory=list)

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def to_document(self, include_certificate: bool = False) -> Dict[str, Any]:
        document: Dict[str, Any] = {"lo": str(self.lo), "hi": str(self.hi), "trace": list(self.trace)}
        if self.witness is not None:
            document["witness"] = self.witness.to_document()
        if include_certificate and self.certificate is not None:
            document["certificate"] = self.certificate.to_document()
        return document

    def __str__(self):
        return f"[{self.lo}, {self.hi}]"


class VerdictKind(str, Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass
class Verdict:
    """
    Three-valued answer to "can the minimizer keep the value at most nu".

    YES carries a verified strategy, NO an interval with ``lo > nu``,
    UNKNOWN the interval that straddles nu.
    """
    kind: VerdictKind
    nu: Fraction
    interval: Optional[ValueInterval] = None
    strategy: Optional[MooreStrategy] = None
    strategy_value: Optional[Fraction] = None

    def to_document(self) -> Dict[str, Any]:
        document: Dict[str, Any] = {"verdict": self.kind.value, "nu": str(self.nu)}
        if self.interval is not None:
            document["interval"] = self.interval.to_document(include_certificate=self.kind is VerdictKind.NO)
        if self.strategy is not None:
            document["strategy"] = strategy_to_document(self.strategy)
            document["strategy_value"] = str(self.strategy_value)
        return document
