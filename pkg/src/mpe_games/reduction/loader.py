"""
JSON format for reduction inputs.

Constraint system::

    {"n": 2,
     "q_rows": [[["1", "1"], ["-2", "2"]]],
     "p_rows": [[["2", "1"], ["-3", "2"]]],
     "bilinear": [[1, 1, 2, 2]]}

Each row is a list of ``[coefficient, variable]`` pairs meaning
``sum(coefficient * q_variable) <= 0``; a bilinear entry ``[i, j, k, l]``
means ``qi*pj = qk*pl``. A polynomial can be given instead and is run
through the whole chain::

    {"polynomial": "x1**2 - 2*x2", "variables": ["x1", "x2"]}
"""

import logging
from typing import Any, Dict, List

from ..exceptions import ConstraintSystemError, InputError
from ..utils.files import parse_json_text, read_json_file
from ..utils.rationals import format_rational, parse_rational
from .chain import ConstraintSystem5, LinearRow, PolynomialEquation, Stage

# Get logger for this module
logger = logging.getLogger(__name__)


def _index(value: Any, location: str) -> int:
    if isinstance(value, bool):
        raise ConstraintSystemError(f"expected a variable index, got {value!r}", location)
    try:
        return int(value)
    except (TypeError, ValueError):
        raise ConstraintSystemError(f"expected a variable index, got {value!r}", location)


def _rows(document: Dict, name: str, source: str) -> List[LinearRow]:
    rows = document.get(name, [])
    if not isinstance(rows, list):
        raise ConstraintSystemError("must be a list of rows", f"{source}: {name}")
    parsed = []
    for r, row in enumerate(rows):
        where = f"{source}: {name}[{r}]"
        if not isinstance(row, list):
            raise ConstraintSystemError("row must be a list of [coefficient, variable] pairs", where)
        coefficients: LinearRow = {}
        for t, pair in enumerate(row):
            if not isinstance(pair, list) or len(pair) != 2:
                raise ConstraintSystemError("expected [coefficient, variable]", f"{where}[{t}]")
            try:
                coefficient = parse_rational(pair[0], f"{where}[{t}][0]")
            except InputError as e:
                raise ConstraintSystemError(str(e))
            index = _index(pair[1], f"{where}[{t}][1]")
            coefficients[index] = coefficients.get(index, 0) + coefficient
        parsed.append(coefficients)
    return parsed


def constraint_system_from_document(document: Any, source: str = "<constraints>") -> Stage:
    """
    Build a reduction input from a decoded JSON document.

    Returns:
        PolynomialEquation when the document has a ``polynomial`` field,
        otherwise ConstraintSystem5

    Raises:
        ConstraintSystemError: With the JSON path of the offending field
    """
    if not isinstance(document, dict):
        raise ConstraintSystemError("expected an object", source)
    if "polynomial" in document:
        variables = document.get("variables")
        system = PolynomialEquation.of(document["polynomial"], variables)
        logger.info(f"Loaded polynomial over {system.n} variables from {source}")
        return system
    if "n" not in document:
        raise ConstraintSystemError("missing field 'n'", source)
    n = document["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ConstraintSystemError("n must be a positive integer", f"{source}: n")

    bilinear = []
    for r, entry in enumerate(document.get("bilinear", [])):
        where = f"{source}: bilinear[{r}]"
        if not isinstance(entry, list) or len(entry) != 4:
            raise ConstraintSystemError("expected four variable indices", where)
        bilinear.append(tuple(_index(v, f"{where}[{i}]") for i, v in enumerate(entry)))

    try:
        system = ConstraintSystem5(n, _rows(document, "q_rows", source), _rows(document, "p_rows", source), bilinear)
    except ConstraintSystemError as e:
        if e.location:
            raise
        raise ConstraintSystemError(str(e), source)
    logger.info(f"Loaded constraint system from {source}: n={n}, t1={system.t1}, t2={system.t2}")
    return system


def load_constraint_system(path: str) -> Stage:
    return constraint_system_from_document(read_json_file(path), path)


def parse_constraint_system(text: str) -> Stage:
    return constraint_system_from_document(parse_json_text(text, "<constraints>"))


def dump_constraint_system(system: ConstraintSystem5) -> Dict[str, Any]:
    """Inverse of constraint_system_from_document for ConstraintSystem5."""
    def rows(family: List[LinearRow]):
        return [[[format_rational(c), i] for i, c in sorted(row.items())] for row in family]

    return {
        "n": system.n,
        "q_rows": rows(system.q_rows),
        "p_rows": rows(system.p_rows),
        "bilinear": [list(quadruple) for quadruple in system.bilinear],
    }
