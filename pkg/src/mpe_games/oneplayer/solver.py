"""
Exact one-player solution.

In a graph where the minimizer has no choices left, the maximizer can realize
every mixture of the simple cycles of a reachable SCC, and for lim-sup atoms
even a different mixture per atom. The value of a point set is therefore the
largest threshold of any normal-form term whose max-free constraints are
feasible, and each term's largest threshold is one LP with nu maximized.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from ..exceptions import CertificateError, InputError
from ..expressions.ast import evaluate_at
from ..expressions.normal_form import NormalFormExpression
from ..geometry.polytope import hull_of
from ..graphs.game_graph import GameGraph, Player
from ..graphs.structure import reachable_sccs, simple_cycles
from .certificates import (
    InfeasibilityCertificate,
    program_certificate,
    strict_lower_bound_row,
    verify_certificate,
)
from .constraints import NU, threshold_program

# Get logger for this module
logger = logging.getLogger(__name__)

Vector = Tuple[Fraction, ...]


@dataclass
class PointSetValue:
    """Value of a point set together with the term and mixings attaining it."""
    value: Fraction
    term_index: int
    mixing: Dict[Optional[int], Tuple[Fraction, ...]] = field(default_factory=dict)


@dataclass(frozen=True)
class UpperBoundCertificate:
    """One infeasibility certificate per term for ``nu > bound``."""
    bound: Fraction
    terms: Tuple[InfeasibilityCertificate, ...]

    def to_document(self) -> Dict:
        return {"bound": str(self.bound), "terms": [c.to_document() for c in self.terms]}


def evaluate_point_set(points: Sequence[Sequence[Fraction]], nf: NormalFormExpression) -> PointSetValue:
    """
    Value of the maximizer on the convex hull of points.

    Args:
        points: Nonempty list of average vectors in the source dimensions
        nf: Normalized expression

    Returns:
        PointSetValue; ties between terms go to the smallest term index
    """
    unique = hull_of(points).points
    if len(unique) == 1:
        extended = nf.extend_weight(unique[0])
        values = [evaluate_at(term, extended) for term in nf.terms]
        chosen = max(range(len(values)), key=lambda i: (values[i], -i))
        return PointSetValue(values[chosen], chosen, {None: (Fraction(1),)})

    extended = [nf.extend_weight(p) for p in unique]
    best: Optional[PointSetValue] = None
    for index, term in enumerate(nf.terms):
        system = threshold_program(term, extended)
        result = system.program.maximize({NU: 1})
        if not result.is_optimal:
            raise CertificateError(f"threshold program of term {index} ended {result.status.value}")
        if best is None or result.objective > best.value:
            mixing = {block: tuple(result.values[n] for n in names) for block, names in system.mixing.items()}
            best = PointSetValue(result.objective, index, mixing)
    logger.debug(f"Point set of {len(unique)} points has value {best.value} via term {best.term_index}")
    return best


def value_of_point_set(points: Sequence[Sequence[Fraction]], nf: NormalFormExpression) -> Fraction:
    return evaluate_point_set(points, nf).value


def _check_one_player(g: GameGraph):
    for vertex_id in g.owned_by(Player.P1):
        if len(g.out_edges(vertex_id)) > 1:
            raise InputError(f"vertex {vertex_id!r} still offers the minimizer {len(g.out_edges(vertex_id))} edges",
                             "one-player graph")


def solve(g: GameGraph, nf: NormalFormExpression) -> Fraction:
    """
    Solve a graph in which every minimizer vertex has a single successor.

    Returns:
        Maximum over reachable nontrivial SCCs of the value of their
        simple-cycle averages

    Raises:
        InputError: If some minimizer vertex has more than one outgoing edge
    """
    _check_one_player(g)
    values = []
    for component in reachable_sccs(g):
        if component.trivial:
            continue
        averages = [c.average for c in simple_cycles(g, component.vertices)]
        values.append(value_of_point_set(averages, nf))
    value = max(values)
    logger.debug(f"One-player value {value} over {len(values)} components")
    return value


def certify_upper_bound(points: Sequence[Sequence[Fraction]], nf: NormalFormExpression,
                        bound: Fraction) -> Optional[UpperBoundCertificate]:
    """
    Prove that the value of a point set is at most bound.

    Returns:
        A certificate when every term's constraints with ``nu > bound`` are
        infeasible, otherwise None
    """
    unique = hull_of(points).points
    extended = [nf.extend_weight(p) for p in unique]
    strict = strict_lower_bound_row(NU, Fraction(bound))
    certificates: List[InfeasibilityCertificate] = []
    for term in nf.terms:
        system = threshold_program(term, extended)
        certificate = program_certificate(system.program, strict)
        if certificate is None:
            return None
        certificates.append(certificate)
    return UpperBoundCertificate(Fraction(bound), tuple(certificates))


def verify_upper_bound(certificate: UpperBoundCertificate) -> bool:
    return all(verify_certificate(c) for c in certificate.terms)
