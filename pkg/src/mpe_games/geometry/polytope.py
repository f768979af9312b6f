"""
Convex hulls of rational point sets.

Polytopes are kept in V-representation only. Membership, containment and
intersection are decided by exact LP feasibility; no facet enumeration is
ever performed.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from ..exceptions import InputError
from .lp import LinearProgram, Sense

# Get logger for this module
logger = logging.getLogger(__name__)

Vector = Tuple[Fraction, ...]


@dataclass(frozen=True)
class Polytope:
    """Convex hull of finitely many rational points of equal dimension."""
    points: Tuple[Vector, ...]

    def __post_init__(self):
        if not self.points:
            raise InputError("a polytope needs at least one generating point")
        dims = {len(p) for p in self.points}
        if len(dims) != 1:
            raise InputError(f"polytope points have mixed dimensions {sorted(dims)}")

    @classmethod
    def of(cls, points: Sequence[Sequence]) -> "Polytope":
        return cls(tuple(tuple(Fraction(x) for x in p) for p in points))

    @property
    def dimension(self) -> int:
        return len(self.points[0])


@dataclass
class MembershipResult:
    contains: bool
    coefficients: Optional[Tuple[Fraction, ...]] = None


@dataclass
class IntersectionResult:
    intersects: bool
    point: Optional[Vector] = None
    left_coefficients: Optional[Tuple[Fraction, ...]] = None
    right_coefficients: Optional[Tuple[Fraction, ...]] = None


def combine(points: Sequence[Vector], coefficients: Sequence[Fraction]) -> Vector:
    """Return the linear combination sum(c_i * p_i)."""
    dim = len(points[0])
    return tuple(sum((c * p[d] for p, c in zip(points, coefficients)), Fraction(0))
                 for d in range(dim))


def _check_dimension(expected: int, actual: int, what: str):
    if expected != actual:
        raise InputError(f"{what} has dimension {actual}, expected {expected}")


def _add_mixture(lp: LinearProgram, prefix: str, count: int) -> List[str]:
    names = [lp.add_variable(f"{prefix}{i}") for i in range(count)]
    lp.add_row({n: 1 for n in names}, Sense.EQ, 1, f"{prefix}sum")
    return names


def member(point: Sequence[Fraction], poly: Polytope) -> MembershipResult:
    """
    Decide whether a point lies in the hull and return convex coefficients.

    Args:
        point: Rational vector of the polytope's dimension
        poly: The hull

    Returns:
        MembershipResult; on success the coefficients reconstruct the point exactly
    """
    _check_dimension(poly.dimension, len(point), "point")
    lp = LinearProgram("member")
    alpha = _add_mixture(lp, "a", len(poly.points))
    for d in range(poly.dimension):
        lp.add_row({alpha[i]: p[d] for i, p in enumerate(poly.points)}, Sense.EQ, Fraction(point[d]), f"dim{d}")
    result = lp.find_feasible()
    if not result.is_optimal:
        return MembershipResult(False)
    return MembershipResult(True, tuple(result.values[a] for a in alpha))


def contained(inner: Polytope, outer: Polytope) -> bool:
    _check_dimension(outer.dimension, inner.dimension, "inner polytope")
    return all(member(p, outer).contains for p in inner.points)


def intersects(a: Polytope, b: Polytope) -> IntersectionResult:
    """
    Decide whether two hulls meet by asking for equal convex combinations.

    Returns:
        IntersectionResult with a common point and both coefficient vectors
    """
    _check_dimension(a.dimension, b.dimension, "right polytope")
    lp = LinearProgram("intersects")
    alpha = _add_mixture(lp, "a", len(a.points))
    beta = _add_mixture(lp, "b", len(b.points))
    for d in range(a.dimension):
        coefficients = {alpha[i]: p[d] for i, p in enumerate(a.points)}
        for j, p in enumerate(b.points):
            coefficients[beta[j]] = -p[d]
        lp.add_row(coefficients, Sense.EQ, 0, f"dim{d}")
    result = lp.find_feasible()
    if not result.is_optimal:
        return IntersectionResult(False)
    left = tuple(result.values[x] for x in alpha)
    right = tuple(result.values[x] for x in beta)
    return IntersectionResult(True, combine(a.points, left), left, right)


def hull_of(points: Sequence[Sequence[Fraction]]) -> Polytope:
    """Build a polytope from points, dropping exact duplicates in first-seen order."""
    unique = list(dict.fromkeys(tuple(Fraction(x) for x in p) for p in points))
    return Polytope(tuple(unique))
