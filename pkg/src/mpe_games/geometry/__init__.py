"""
Exact rational geometry: linear programming and convex hulls.
"""

from .lp import LinearProgram, LPResult, LPStatus, Row, Sense
from .polytope import (
    IntersectionResult,
    MembershipResult,
    Polytope,
    combine,
    contained,
    hull_of,
    intersects,
    member,
)

__all__ = [
    "LinearProgram",
    "LPResult",
    "LPStatus",
    "Row",
    "Sense",
    "IntersectionResult",
    "MembershipResult",
    "Polytope",
    "combine",
    "contained",
    "hull_of",
    "intersects",
    "member",
]
