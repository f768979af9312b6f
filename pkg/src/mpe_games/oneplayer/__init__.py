"""
Exact one-player solution via max-free constraints.
"""

from .certificates import InfeasibilityCertificate, find_certificate, verify_certificate
from .constraints import FeasibilityResult, MaxFreeConstraintSystem, build_constraints, feasible
from .solver import (
    PointSetValue,
    UpperBoundCertificate,
    certify_upper_bound,
    evaluate_point_set,
    solve,
    value_of_point_set,
    verify_upper_bound,
)

__all__ = [
    "InfeasibilityCertificate",
    "find_certificate",
    "verify_certificate",
    "FeasibilityResult",
    "MaxFreeConstraintSystem",
    "build_constraints",
    "feasible",
    "PointSetValue",
    "UpperBoundCertificate",
    "certify_upper_bound",
    "evaluate_point_set",
    "solve",
    "value_of_point_set",
    "verify_upper_bound",
]
