"""
Constraint-system chain from a polynomial equation to a bilinear system.

Every stage is a value with three operations: ``reduce`` produces the next
stage, ``satisfied_by`` checks an assignment against the stage's equations
and side conditions, and ``extend_assignment`` turns a satisfying assignment
into one for the next stage. The stages are

1. PolynomialEquation: a rational root of P(x1, ..., xn).
2. HomogenizedEquation: ``q0 * D(q1/q0, ..., qN/q0) = 0`` with ``1 <= q0 <= qi``,
   where D substitutes ``xi = q(2i-1) - q(2i)``.
3. QuadraticSystem: one linear equation plus products ``qi*qj = qk*ql``.
4. BalancedSystem: two families Q and P, bilinear products ``qi*pj = qk*pl``
   and half-sum equations, with ``sum(P) = sum(Q)``.
5. ConstraintSystem5: linear inequalities on Q and on P plus bilinear
   products, over positive rationals.

Indices are 0-based for stages 2 and 3 (q0 is a real variable there) and
1-based from stage 4 on.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

import sympy as sp

from ..exceptions import ConstraintSystemError

# Get logger for this module
logger = logging.getLogger(__name__)

LinearRow = Dict[int, Fraction]
Product = Tuple[int, int, int, int]
Monomial = Tuple[Fraction, Tuple[int, ...], int]
PairAssignment = Tuple[Tuple[Fraction, ...], Tuple[Fraction, ...]]


def _fraction(value) -> Fraction:
    rational = sp.Rational(value)
    return Fraction(int(rational.p), int(rational.q))


def _row_value(row: LinearRow, values: Sequence[Fraction], offset: int = 0) -> Fraction:
    return sum((c * values[i - offset] for i, c in row.items()), Fraction(0))


def _dedupe(products: Sequence[Product]) -> List[Product]:
    seen = set()
    kept = []
    for product in products:
        if product not in seen:
            seen.add(product)
            kept.append(product)
    return kept


@dataclass
class PolynomialEquation:
    """P(x1, ..., xn) = 0 over the rationals."""
    poly: sp.Poly

    @classmethod
    def of(cls, expr, variables: Optional[Sequence] = None) -> "PolynomialEquation":
        """
        Build from a sympy expression or expression text.

        Args:
            expr: Polynomial expression, e.g. ``"x1**2 - 2*x2"``
            variables: Variable symbols or names in order; defaults to the
                free symbols sorted by name

        Raises:
            ConstraintSystemError: If the expression is not a polynomial with
                rational coefficients
        """
        try:
            parsed = sp.sympify(expr)
            if variables is None:
                symbols = sorted(parsed.free_symbols, key=lambda s: s.name) or [sp.Symbol("x1")]
            else:
                symbols = [sp.Symbol(v) if isinstance(v, str) else v for v in variables]
            poly = sp.Poly(parsed, *symbols, domain="QQ")
        except (sp.SympifyError, sp.PolynomialError, TypeError) as e:
            raise ConstraintSystemError(f"not a rational polynomial: {e}")
        return cls(poly)

    @property
    def n(self) -> int:
        return len(self.poly.gens)

    def satisfied_by(self, assignment: Sequence[Fraction]) -> bool:
        if len(assignment) != self.n:
            return False
        values = {g: sp.Rational(Fraction(x).numerator, Fraction(x).denominator)
                  for g, x in zip(self.poly.gens, assignment)}
        return self.poly.as_expr().subs(values) == 0

    def substituted(self) -> sp.Poly:
        """D(p1, ..., p2n) = P(p1 - p2, ..., p(2n-1) - p(2n)), whose roots >= 1 match the roots of P."""
        split = sp.symbols(f"p1:{2 * self.n + 1}")
        mapping = {g: split[2 * i] - split[2 * i + 1] for i, g in enumerate(self.poly.gens)}
        return sp.Poly(sp.expand(self.poly.as_expr().subs(mapping, simultaneous=True)), *split, domain="QQ")

    def reduce(self) -> "HomogenizedEquation":
        d = self.substituted()
        monomials = []
        for exponents, coefficient in d.terms():
            if coefficient == 0:
                continue
            monomials.append((_fraction(coefficient), tuple(int(e) for e in exponents), 1 - sum(exponents)))
        logger.debug(f"Homogenized a degree-{self.poly.total_degree()} polynomial into {len(monomials)} monomials")
        return HomogenizedEquation(2 * self.n, monomials)

    def extend_assignment(self, assignment: Sequence[Fraction]) -> Tuple[Fraction, ...]:
        """Split every xi into a difference of two values >= 1 and set q0 = 1."""
        values = [Fraction(1)]
        for x in assignment:
            x = Fraction(x)
            low = max(Fraction(1), 1 - x)
            values.extend([x + low, low])
        return tuple(values)


@dataclass
class HomogenizedEquation:
    """
    ``sum(c * prod(qi**ei) * q0**s) = 0`` over q0..qN with ``1 <= q0 <= qi``.

    Each monomial is (c, (e1, ..., eN), s) with ``s = 1 - sum(e)``.
    """
    n: int
    monomials: List[Monomial] = field(default_factory=list)

    def value(self, assignment: Sequence[Fraction]) -> Fraction:
        q0 = Fraction(assignment[0])
        total = Fraction(0)
        for coefficient, exponents, power in self.monomials:
            term = coefficient * q0 ** power
            for i, e in enumerate(exponents, start=1):
                term *= Fraction(assignment[i]) ** e
            total += term
        return total

    def satisfied_by(self, assignment: Sequence[Fraction]) -> bool:
        if len(assignment) != self.n + 1:
            return False
        q0 = Fraction(assignment[0])
        if q0 < 1 or any(Fraction(q) < q0 for q in assignment[1:]):
            return False
        return self.value(assignment) == 0

    def reduce(self) -> "QuadraticSystem":
        """
        Decompose every monomial into a chain of products against q0.

        A power ``qi**e`` becomes ``r1*q0 = qi*qi, r2*q0 = r1*qi, ...`` and
        the powers of one monomial are combined left to right the same way,
        so each auxiliary variable equals a monomial divided by a power of q0.
        Shared powers and prefixes reuse the same auxiliary variable.
        """
        builder = _ProductBuilder(self.n)
        linear: LinearRow = {}
        for coefficient, exponents, _ in self.monomials:
            index = builder.monomial(exponents)
            linear[index] = linear.get(index, Fraction(0)) + coefficient
        linear = {i: c for i, c in sorted(linear.items()) if c != 0}
        logger.debug(f"Monomial decomposition added {builder.size - self.n - 1} auxiliary variables")
        return QuadraticSystem(builder.size, linear, builder.products, builder.definitions)

    def extend_assignment(self, assignment: Sequence[Fraction]) -> Tuple[Fraction, ...]:
        return self.reduce().complete(assignment)


class _ProductBuilder:
    """Allocates auxiliary variables for monomials over q1..qN."""

    def __init__(self, n: int):
        self.size = n + 1
        self.products: List[Product] = []
        self.definitions: List[Tuple[int, int, int]] = []
        self._memo: Dict[Tuple[int, ...], int] = {}

    def _times(self, left: Tuple[int, ...], left_index: int, right: Tuple[int, ...], right_index: int) -> Tuple[Tuple[int, ...], int]:
        key = tuple(sorted(left + right))
        if key not in self._memo:
            index = self.size
            self.size += 1
            # q[index] * q0 = q[left] * q[right]
            self.products.append((index, 0, left_index, right_index))
            self.definitions.append((index, left_index, right_index))
            self._memo[key] = index
        return key, self._memo[key]

    def monomial(self, exponents: Sequence[int]) -> int:
        if not any(exponents):
            return 0
        acc: Optional[Tuple[Tuple[int, ...], int]] = None
        for i, e in enumerate(exponents, start=1):
            if e == 0:
                continue
            power = ((i,), i)
            for _ in range(e - 1):
                power = self._times(power[0], power[1], (i,), i)
            acc = power if acc is None else self._times(acc[0], acc[1], power[0], power[1])
        return acc[1]


@dataclass
class QuadraticSystem:
    """
    Variables q0..q(size-1): ``sum(alpha_i * qi) = 0`` and ``qi*qj = qk*ql``,
    subject to ``1 <= q0 <= qi``.

    ``definitions`` lists (aux, left, right) with ``aux = left*right/q0`` in
    creation order; it is empty for systems built by hand.
    """
    size: int
    linear: LinearRow = field(default_factory=dict)
    products: List[Product] = field(default_factory=list)
    definitions: List[Tuple[int, int, int]] = field(default_factory=list)

    def __post_init__(self):
        for i in self.linear:
            if not 0 <= i < self.size:
                raise ConstraintSystemError(f"linear coefficient on unknown variable q{i}")
        for product in self.products:
            if any(not 0 <= i < self.size for i in product):
                raise ConstraintSystemError(f"product {product} uses an unknown variable")

    def satisfied_by(self, assignment: Sequence[Fraction]) -> bool:
        if len(assignment) != self.size:
            return False
        q = [Fraction(x) for x in assignment]
        if q[0] < 1 or any(x < q[0] for x in q[1:]):
            return False
        if _row_value(self.linear, q) != 0:
            return False
        return all(q[i] * q[j] == q[k] * q[l] for i, j, k, l in self.products)

    def complete(self, assignment: Sequence[Fraction]) -> Tuple[Fraction, ...]:
        """Fill the auxiliary variables from q0..qN by their definitions."""
        q = [Fraction(x) for x in assignment]
        for index, left, right in self.definitions:
            if index != len(q):
                raise ConstraintSystemError(f"auxiliary variable q{index} defined out of order")
            q.append(q[left] * q[right] / q[0])
        return tuple(q)

    def reduce(self) -> "BalancedSystem":
        """
        Encode each product with the P family and one shared half-sum variable.

        Variables shift to 1-based (q0 becomes q1) and the half-sum variable
        is q(size+1). For ``qa*qb = qc*qd`` the system gets
        ``qb*ph = qh*pb``, ``qd*ph = qh*pd`` and ``qa*pb = qc*pd``; with
        ``sum(P) = sum(Q)`` the half-sums force ``ph = qh``, hence ``pb = qb``
        and ``pd = qd``.
        """
        n = self.size + 1
        h = n
        products: List[Product] = []
        for a, b, c, d in self.products:
            a, b, c, d = a + 1, b + 1, c + 1, d + 1
            products.extend([(b, h, h, b), (d, h, h, d), (a, b, c, d)])
        linear = {i + 1: c for i, c in self.linear.items()}
        return BalancedSystem(n, linear, _dedupe(products), [h], [h])

    def extend_assignment(self, assignment: Sequence[Fraction]) -> PairAssignment:
        q = tuple(Fraction(x) for x in assignment) + (sum((Fraction(x) for x in assignment), Fraction(0)),)
        return q, q


@dataclass
class BalancedSystem:
    """
    Two families q1..qn and p1..pn: one linear equation on Q, products
    ``qi*pj = qk*pl`` and half-sum equations ``qi = sum(Q)/2``,
    ``pi = sum(P)/2``, subject to ``q1 <= qi``, ``qi, pi >= 1`` and
    ``sum(P) = sum(Q)``.
    """
    n: int
    linear: LinearRow = field(default_factory=dict)
    products: List[Product] = field(default_factory=list)
    half_q: List[int] = field(default_factory=list)
    half_p: List[int] = field(default_factory=list)

    def satisfied_by(self, assignment: PairAssignment) -> bool:
        q, p = [Fraction(x) for x in assignment[0]], [Fraction(x) for x in assignment[1]]
        if len(q) != self.n or len(p) != self.n:
            return False
        if any(x < 1 for x in q + p) or any(x < q[0] for x in q):
            return False
        if sum(q) != sum(p):
            return False
        if _row_value(self.linear, q, 1) != 0:
            return False
        if any(2 * q[i - 1] != sum(q) for i in self.half_q) or any(2 * p[i - 1] != sum(p) for i in self.half_p):
            return False
        return all(q[i - 1] * p[j - 1] == q[k - 1] * p[l - 1] for i, j, k, l in self.products)

    def reduce(self) -> "ConstraintSystem5":
        """Split equations into pairs of inequalities and add ``q1 - qi <= 0``."""
        half = Fraction(1, 2)
        q_rows: List[LinearRow] = []
        p_rows: List[LinearRow] = []
        if self.linear:
            q_rows.append(dict(self.linear))
            q_rows.append({i: -c for i, c in self.linear.items()})
        for rows, indices in ((q_rows, self.half_q), (p_rows, self.half_p)):
            for i in indices:
                row = {j: half for j in range(1, self.n + 1) if j != i}
                row[i] = -half
                rows.append(row)
                rows.append({j: -c for j, c in row.items()})
        for i in range(2, self.n + 1):
            q_rows.append({1: Fraction(1), i: Fraction(-1)})
        return ConstraintSystem5(self.n, q_rows, p_rows, list(self.products))

    def extend_assignment(self, assignment: PairAssignment) -> PairAssignment:
        return tuple(Fraction(x) for x in assignment[0]), tuple(Fraction(x) for x in assignment[1])


@dataclass
class ConstraintSystem5:
    """
    Linear inequalities ``sum(alpha_i * qi) <= 0`` and ``sum(alpha_i * pi) <= 0``
    plus products ``qi*pj = qk*pl`` over positive rationals, 1-based indices.
    """
    n: int
    q_rows: List[LinearRow] = field(default_factory=list)
    p_rows: List[LinearRow] = field(default_factory=list)
    bilinear: List[Product] = field(default_factory=list)

    def __post_init__(self):
        if self.n < 1:
            raise ConstraintSystemError(f"variable count must be positive, got {self.n}")
        for family, rows in (("q", self.q_rows), ("p", self.p_rows)):
            for r, row in enumerate(rows):
                for i in row:
                    if not 1 <= i <= self.n:
                        raise ConstraintSystemError(f"{family}_rows[{r}] uses variable {i} outside 1..{self.n}")
        for r, quadruple in enumerate(self.bilinear):
            if len(quadruple) != 4 or any(not 1 <= i <= self.n for i in quadruple):
                raise ConstraintSystemError(f"bilinear[{r}] must be four indices in 1..{self.n}")

    @property
    def t1(self) -> int:
        """Linear rows per family once the shorter family is padded."""
        return max(len(self.q_rows), len(self.p_rows))

    @property
    def t2(self) -> int:
        return len(self.bilinear)

    def padded_rows(self) -> Tuple[List[LinearRow], List[LinearRow]]:
        """Both row families extended with empty rows to length t1."""
        q_rows = list(self.q_rows) + [{} for _ in range(self.t1 - len(self.q_rows))]
        p_rows = list(self.p_rows) + [{} for _ in range(self.t1 - len(self.p_rows))]
        return q_rows, p_rows

    def satisfied_by(self, assignment: PairAssignment) -> bool:
        q, p = [Fraction(x) for x in assignment[0]], [Fraction(x) for x in assignment[1]]
        if len(q) != self.n or len(p) != self.n:
            return False
        if any(x <= 0 for x in q + p):
            return False
        if any(_row_value(row, q, 1) > 0 for row in self.q_rows):
            return False
        if any(_row_value(row, p, 1) > 0 for row in self.p_rows):
            return False
        return all(q[i - 1] * p[j - 1] == q[k - 1] * p[l - 1] for i, j, k, l in self.bilinear)

    def reduce(self) -> "ConstraintSystem5":
        return self

    def extend_assignment(self, assignment: PairAssignment) -> PairAssignment:
        return assignment


Stage = Union[PolynomialEquation, HomogenizedEquation, QuadraticSystem, BalancedSystem, ConstraintSystem5]


def reduce_chain(system: Stage) -> ConstraintSystem5:
    """
    Run a system at any stage down to a ConstraintSystem5.

    The transformation is deterministic; satisfiability over each stage's
    side conditions is preserved in both directions.
    """
    stages = 0
    while not isinstance(system, ConstraintSystem5):
        system = system.reduce()
        stages += 1
    logger.info(f"Reduced through {stages} stages: n={system.n}, t1={system.t1}, t2={system.t2}")
    return system


def extend_through_chain(system: Stage, assignment) -> PairAssignment:
    """Carry a satisfying assignment of ``system`` down to the final stage."""
    while not isinstance(system, ConstraintSystem5):
        assignment = system.extend_assignment(assignment)
        system = system.reduce()
    return assignment
