"""
Max-free constraints.

For a max-free term and the simple-cycle averages of a strongly connected
one-player graph, the threshold nu is achievable iff this LP is feasible:

* one mixing vector X^i >= 0 summing to 1 for every lim-sup atom i, or a
  single shared X when the term has no lim-sup atom;
* ``sum_c X^i_c * Avg_m(c) >= r_m`` for every lim-inf dimension m and m = i
  (every dimension of the term for the shared X);
* every min-of-sums row of the term satisfies ``sum count * r >= nu``.

Dimensions are the extended dimensions of a normal form, and the point
coordinates must be given in that space.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from ..expressions.ast import AtomKind
from ..expressions.normal_form import LinearForm, MaxFreeTerm, min_of_sums, term_atoms
from ..geometry.lp import LinearProgram, Sense
from .certificates import InfeasibilityCertificate, program_certificate

# Get logger for this module
logger = logging.getLogger(__name__)

NU = "nu"


@dataclass
class MaxFreeConstraintSystem:
    term: MaxFreeTerm
    points: Tuple[Tuple[Fraction, ...], ...]
    nu: Optional[Fraction]
    program: LinearProgram
    mixing: Dict[Optional[int], List[str]] = field(default_factory=dict)
    atom_values: Dict[int, str] = field(default_factory=dict)
    forms: List[LinearForm] = field(default_factory=list)


@dataclass
class FeasibilityResult:
    feasible: bool
    solution: Optional[Dict[str, Fraction]] = None
    certificate: Optional[InfeasibilityCertificate] = None


def mixing_blocks(term: MaxFreeTerm) -> Dict[Optional[int], List[int]]:
    """
    Dimensions constrained by each mixing vector.

    Returns:
        Map from lim-sup dimension (or None for the shared vector) to the
        sorted dimensions whose rows use that vector
    """
    kinds = term_atoms(term)
    lim_inf = sorted(d for d, k in kinds.items() if k is AtomKind.LIM_INF)
    lim_sup = sorted(d for d, k in kinds.items() if k is AtomKind.LIM_SUP)
    if not lim_sup:
        return {None: lim_inf}
    return {i: sorted(lim_inf + [i]) for i in lim_sup}


def _build(term: MaxFreeTerm, points: Sequence[Sequence[Fraction]], nu: Optional[Fraction]) -> MaxFreeConstraintSystem:
    lp = LinearProgram("max_free")
    system = MaxFreeConstraintSystem(term, tuple(tuple(p) for p in points), nu, lp)
    for dim in sorted(term_atoms(term)):
        system.atom_values[dim] = lp.add_variable(f"r{dim}", nonnegative=False)
    if nu is None:
        lp.add_variable(NU, nonnegative=False)

    for block, dims in mixing_blocks(term).items():
        tag = "X" if block is None else f"X{block}_"
        names = [lp.add_variable(f"{tag}{c}") for c in range(len(points))]
        system.mixing[block] = names
        lp.add_row({n: 1 for n in names}, Sense.EQ, 1, f"sum[{tag}]")
        for m in dims:
            coefficients = {n: Fraction(p[m - 1]) for n, p in zip(names, points)}
            coefficients[system.atom_values[m]] = coefficients.get(system.atom_values[m], 0) - 1
            lp.add_row(coefficients, Sense.GE, 0, f"avg[{tag},{m}]")

    system.forms = min_of_sums(term)
    for i, form in enumerate(system.forms):
        coefficients = {system.atom_values[d]: count for d, count in form.items()}
        if nu is None:
            coefficients[NU] = -1
            lp.add_row(coefficients, Sense.GE, 0, f"threshold[{i}]")
        else:
            lp.add_row(coefficients, Sense.GE, nu, f"threshold[{i}]")
    return system


def build_constraints(term: MaxFreeTerm, cycle_averages: Sequence[Sequence[Fraction]],
                      nu: Fraction) -> MaxFreeConstraintSystem:
    """
    Max-free constraints of a term at threshold nu.

    Args:
        term: Max-free term over extended dimensions
        cycle_averages: Nonempty list of averages in the extended dimensions
        nu: Threshold

    Returns:
        The constraint system, wrapping an exact LinearProgram
    """
    if not cycle_averages:
        raise ValueError("max-free constraints need at least one cycle average")
    return _build(term, cycle_averages, Fraction(nu))


def threshold_program(term: MaxFreeTerm, points: Sequence[Sequence[Fraction]]) -> MaxFreeConstraintSystem:
    """Same constraints with nu as a free variable, for maximisation."""
    return _build(term, points, None)


def feasible(system: MaxFreeConstraintSystem) -> FeasibilityResult:
    """
    Decide the system exactly.

    Returns:
        FeasibilityResult with a solution, or with an infeasibility certificate
    """
    result = system.program.find_feasible()
    if result.is_optimal:
        return FeasibilityResult(True, solution=result.values)
    certificate = program_certificate(system.program)
    logger.debug(f"Threshold {system.nu} infeasible; certificate found: {certificate is not None}")
    return FeasibilityResult(False, certificate=certificate)
