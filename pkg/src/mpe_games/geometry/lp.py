"""
Exact rational linear programming.

A dense two-phase simplex over ``fractions.Fraction``. Pivoting follows
Bland's rule (smallest entering index, smallest leaving basic index on ratio
ties), so every run terminates and every reported value is exact.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple, Union

# Get logger for this module
logger = logging.getLogger(__name__)

Number = Union[Fraction, int]


class Sense(str, Enum):
    LE = "<="
    GE = ">="
    EQ = "=="


class LPStatus(str, Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class Row:
    """A linear row ``sum(coefficients) sense rhs`` over named variables."""
    coefficients: Tuple[Tuple[str, Fraction], ...]
    sense: Sense
    rhs: Fraction
    name: str = ""

    def evaluate(self, values: Mapping[str, Fraction]) -> Fraction:
        return sum((c * values.get(v, Fraction(0)) for v, c in self.coefficients), Fraction(0))

    def holds(self, values: Mapping[str, Fraction]) -> bool:
        lhs = self.evaluate(values)
        if self.sense is Sense.LE:
            return lhs <= self.rhs
        if self.sense is Sense.GE:
            return lhs >= self.rhs
        return lhs == self.rhs


@dataclass
class LPResult:
    status: LPStatus
    values: Dict[str, Fraction] = field(default_factory=dict)
    objective: Optional[Fraction] = None

    @property
    def is_optimal(self) -> bool:
        return self.status is LPStatus.OPTIMAL


class LinearProgram:
    """
    Builder for a rational LP over named variables.

    Variables are nonnegative unless declared free. Rows may be ``<=``,
    ``>=`` or ``==``. The same program can be optimised for several
    objectives; each call runs a fresh simplex.
    """

    def __init__(self, name: str = "lp"):
        self.name = name
        self.variables: Dict[str, bool] = {}
        self.rows: List[Row] = []

    def add_variable(self, name: str, nonnegative: bool = True) -> str:
        if name in self.variables:
            raise ValueError(f"Duplicate LP variable: {name}")
        self.variables[name] = nonnegative
        return name

    def add_row(self, coefficients: Mapping[str, Number], sense: Sense,
                rhs: Number = 0, name: str = "") -> Row:
        for variable in coefficients:
            if variable not in self.variables:
                raise ValueError(f"Unknown LP variable in row {name!r}: {variable}")
        row = Row(
            tuple((v, Fraction(c)) for v, c in coefficients.items() if c != 0),
            Sense(sense),
            Fraction(rhs),
            name,
        )
        self.rows.append(row)
        return row

    def maximize(self, objective: Mapping[str, Number]) -> LPResult:
        return _solve(self, objective, maximize=True)

    def minimize(self, objective: Mapping[str, Number]) -> LPResult:
        return _solve(self, objective, maximize=False)

    def find_feasible(self) -> LPResult:
        return _solve(self, {}, maximize=False)

    def satisfied_by(self, values: Mapping[str, Fraction]) -> bool:
        """Check every row and sign constraint exactly."""
        for variable, nonnegative in self.variables.items():
            if nonnegative and values.get(variable, Fraction(0)) < 0:
                return False
        return all(row.holds(values) for row in self.rows)

    def weak_rows(self) -> List[Tuple[Dict[str, Fraction], Fraction, str]]:
        """
        Rewrite the program as a list of ``a.x <= b`` rows over free variables.

        Equalities become two rows and sign constraints become ``-x <= 0``.
        This is the shape the infeasibility certificates are stated against.

        Returns:
            List of (coefficients, rhs, label) tuples
        """
        rows = []
        for index, row in enumerate(self.rows):
            label = row.name or f"row{index}"
            coefficients = dict(row.coefficients)
            if row.sense in (Sense.LE, Sense.EQ):
                rows.append((coefficients, row.rhs, f"{label}:le"))
            if row.sense in (Sense.GE, Sense.EQ):
                rows.append(({v: -c for v, c in coefficients.items()}, -row.rhs, f"{label}:ge"))
        for variable, nonnegative in self.variables.items():
            if nonnegative:
                rows.append(({variable: Fraction(-1)}, Fraction(0), f"{variable}>=0"))
        return rows


class _Tableau:
    """Dense simplex tableau ``A x = b`` with an explicit basis."""

    def __init__(self, matrix: List[List[Fraction]], rhs: List[Fraction], basis: List[int]):
        self.A = matrix
        self.b = rhs
        self.basis = basis

    @property
    def m(self) -> int:
        return len(self.A)

    def pivot(self, i: int, j: int):
        piv = self.A[i][j]
        row = [value / piv for value in self.A[i]]
        rhs = self.b[i] / piv
        self.A[i] = row
        self.b[i] = rhs
        for k in range(self.m):
            if k != i:
                f = self.A[k][j]
                if f != 0:
                    self.A[k] = [a - f * r for a, r in zip(self.A[k], row)]
                    self.b[k] -= f * rhs
        self.basis[i] = j

    def objective_value(self, cost: List[Fraction]) -> Fraction:
        return sum((cost[self.basis[i]] * self.b[i] for i in range(self.m)), Fraction(0))

    def bland_step(self, cost: List[Fraction], allowed: List[int]) -> str:
        in_basis = set(self.basis)
        # reduced cost d_j = c_j - sum_i c_B(i) a_ij, minimisation
        basic_costs = [cost[b] for b in self.basis]
        try:
            j = min(j for j in allowed
                    if j not in in_basis
                    and cost[j] - sum(basic_costs[i] * self.A[i][j] for i in range(self.m)) < 0)
        except ValueError:
            return "optimal"
        try:
            _, _, i = min((self.b[i] / self.A[i][j], self.basis[i], i)
                          for i in range(self.m)
                          if self.A[i][j] > 0)
        except ValueError:
            return "unbounded"
        self.pivot(i, j)
        return "go_on"

    def run(self, cost: List[Fraction], allowed: List[int]) -> str:
        steps = 0
        while True:
            ret = self.bland_step(cost, allowed)
            if ret != "go_on":
                logger.debug(f"Simplex finished after {steps} pivots: {ret}")
                return ret
            steps += 1


def _solve(lp: LinearProgram, objective: Mapping[str, Number], maximize: bool) -> LPResult:
    for variable in objective:
        if variable not in lp.variables:
            raise ValueError(f"Unknown LP variable in objective: {variable}")

    # Structural columns: one per nonnegative variable, two per free variable
    columns: Dict[str, List[Tuple[int, int]]] = {}
    n_struct = 0
    for variable, nonnegative in lp.variables.items():
        if nonnegative:
            columns[variable] = [(n_struct, 1)]
            n_struct += 1
        else:
            columns[variable] = [(n_struct, 1), (n_struct + 1, -1)]
            n_struct += 2

    dense_rows = []
    for row in lp.rows:
        coefficients = [Fraction(0)] * n_struct
        for variable, value in row.coefficients:
            for column, sign in columns[variable]:
                coefficients[column] += sign * value
        rhs, sense = row.rhs, row.sense
        if rhs < 0:
            coefficients = [-c for c in coefficients]
            rhs = -rhs
            sense = {Sense.LE: Sense.GE, Sense.GE: Sense.LE, Sense.EQ: Sense.EQ}[sense]
        dense_rows.append((coefficients, sense, rhs))

    n_slack = sum(1 for _, sense, _ in dense_rows if sense is not Sense.EQ)
    n_artificial = sum(1 for _, sense, _ in dense_rows if sense is not Sense.LE)
    n_total = n_struct + n_slack + n_artificial
    first_artificial = n_struct + n_slack

    matrix, rhs_values, basis = [], [], []
    slack_col, artificial_col = n_struct, first_artificial
    for coefficients, sense, rhs in dense_rows:
        row = coefficients + [Fraction(0)] * (n_slack + n_artificial)
        if sense is Sense.LE:
            row[slack_col] = Fraction(1)
            basis.append(slack_col)
            slack_col += 1
        else:
            if sense is Sense.GE:
                row[slack_col] = Fraction(-1)
                slack_col += 1
            row[artificial_col] = Fraction(1)
            basis.append(artificial_col)
            artificial_col += 1
        matrix.append(row)
        rhs_values.append(rhs)

    tableau = _Tableau(matrix, rhs_values, basis)

    if n_artificial:
        phase_one = [Fraction(0)] * first_artificial + [Fraction(1)] * n_artificial
        tableau.run(phase_one, list(range(n_total)))
        if tableau.objective_value(phase_one) > 0:
            logger.debug(f"LP {lp.name} infeasible ({len(lp.rows)} rows)")
            return LPResult(LPStatus.INFEASIBLE)
        # Drive remaining artificial columns out of the basis
        redundant = []
        for i in range(tableau.m):
            if tableau.basis[i] >= first_artificial:
                for j in range(first_artificial):
                    if tableau.A[i][j] != 0:
                        tableau.pivot(i, j)
                        break
                else:
                    redundant.append(i)
        for i in reversed(redundant):
            del tableau.A[i]
            del tableau.b[i]
            del tableau.basis[i]

    cost = [Fraction(0)] * n_total
    sign = -1 if maximize else 1
    for variable, value in objective.items():
        for column, column_sign in columns[variable]:
            cost[column] += sign * column_sign * Fraction(value)

    status = tableau.run(cost, list(range(first_artificial)))
    if status == "unbounded":
        return LPResult(LPStatus.UNBOUNDED)

    column_values = [Fraction(0)] * n_total
    for i, b in enumerate(tableau.basis):
        column_values[b] = tableau.b[i]
    values = {
        variable: sum((s * column_values[c] for c, s in cols), Fraction(0))
        for variable, cols in columns.items()
    }
    value = sum((Fraction(c) * values[v] for v, c in objective.items()), Fraction(0))
    return LPResult(LPStatus.OPTIMAL, values, value)
