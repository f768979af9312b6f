"""
Infeasibility certificates for rational linear systems.

A mixed system ``A x <= b, B x < c`` over free variables has no solution iff
there are multipliers y, z >= 0 with ``A^T y + B^T z = 0`` and either
``b.y + c.z < 0``, or ``z != 0`` and ``b.y + c.z <= 0``. Both branches are
found by one LP with the normalisation ``sum(z) - (b.y + c.z) = 1``.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from ..geometry.lp import LinearProgram, Sense

# Get logger for this module
logger = logging.getLogger(__name__)

LinearRow = Tuple[Dict[str, Fraction], Fraction, str]


@dataclass(frozen=True)
class InfeasibilityCertificate:
    """Multipliers for the weak rows (y) and the strict rows (z)."""
    weak_rows: Tuple[LinearRow, ...]
    strict_rows: Tuple[LinearRow, ...]
    y: Tuple[Fraction, ...]
    z: Tuple[Fraction, ...]

    def to_document(self) -> Dict:
        def rows(entries, multipliers):
            return [{"row": label, "multiplier": str(m)}
                    for (_, _, label), m in zip(entries, multipliers) if m != 0]
        return {"weak": rows(self.weak_rows, self.y), "strict": rows(self.strict_rows, self.z)}


def find_certificate(weak_rows: Sequence[LinearRow],
                     strict_rows: Sequence[LinearRow] = ()) -> Optional[InfeasibilityCertificate]:
    """
    Search for transposition multipliers proving the system infeasible.

    Args:
        weak_rows: Rows ``a.x <= b`` as (coefficients, rhs, label)
        strict_rows: Rows ``a.x < c`` in the same shape

    Returns:
        A certificate, or None when the system is feasible
    """
    lp = LinearProgram("transposition")
    y = [lp.add_variable(f"y{i}") for i in range(len(weak_rows))]
    z = [lp.add_variable(f"z{j}") for j in range(len(strict_rows))]
    variables = sorted({v for rows in (weak_rows, strict_rows) for coeffs, _, _ in rows for v in coeffs})
    for variable in variables:
        column = {}
        for name, (coeffs, _, _) in zip(y, weak_rows):
            if coeffs.get(variable):
                column[name] = coeffs[variable]
        for name, (coeffs, _, _) in zip(z, strict_rows):
            if coeffs.get(variable):
                column[name] = coeffs[variable]
        if column:
            lp.add_row(column, Sense.EQ, 0, f"cancel[{variable}]")
    combined = {name: rhs for name, (_, rhs, _) in zip(y, weak_rows)}
    combined.update({name: rhs for name, (_, rhs, _) in zip(z, strict_rows)})
    lp.add_row(combined, Sense.LE, 0, "combined_rhs")
    normalisation = {name: -rhs for name, rhs in combined.items()}
    for name in z:
        normalisation[name] = normalisation.get(name, Fraction(0)) + 1
    lp.add_row(normalisation, Sense.EQ, 1, "normalisation")

    result = lp.find_feasible()
    if not result.is_optimal:
        return None
    certificate = InfeasibilityCertificate(
        tuple(weak_rows), tuple(strict_rows),
        tuple(result.values[n] for n in y), tuple(result.values[n] for n in z),
    )
    logger.debug(f"Found infeasibility certificate over {len(weak_rows)} weak and {len(strict_rows)} strict rows")
    return certificate


def verify_certificate(certificate: InfeasibilityCertificate) -> bool:
    """Check a certificate by exact arithmetic, independently of how it was found."""
    if len(certificate.y) != len(certificate.weak_rows) or len(certificate.z) != len(certificate.strict_rows):
        return False
    if any(m < 0 for m in certificate.y) or any(m < 0 for m in certificate.z):
        return False
    totals: Dict[str, Fraction] = {}
    rhs = Fraction(0)
    for (coeffs, b, _), m in list(zip(certificate.weak_rows, certificate.y)) + \
            list(zip(certificate.strict_rows, certificate.z)):
        for variable, value in coeffs.items():
            totals[variable] = totals.get(variable, Fraction(0)) + m * value
        rhs += m * b
    if any(value != 0 for value in totals.values()):
        return False
    if any(m > 0 for m in certificate.z):
        return rhs <= 0
    return rhs < 0


def program_certificate(lp: LinearProgram,
                        strict_rows: Sequence[LinearRow] = ()) -> Optional[InfeasibilityCertificate]:
    """Certificate for a LinearProgram's rows and sign constraints, plus optional strict rows."""
    return find_certificate(lp.weak_rows(), strict_rows)


def strict_lower_bound_row(variable: str, bound: Fraction) -> List[LinearRow]:
    """The strict row ``variable > bound`` written as ``-variable < -bound``."""
    return [({variable: Fraction(-1)}, -Fraction(bound), f"{variable}>{bound}")]
