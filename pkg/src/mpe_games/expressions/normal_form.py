"""
Normal form of mean-payoff expressions.

An expression is rewritten into a MAX of max-free terms over an extended
weight function: negations are pushed into the weights (the negation of a
lim-inf average is the lim-sup average of the negated weights), MAX is
distributed outwards over MIN and SUM, and repeated atoms of one term are
given separate copies of their source dimension.
"""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .ast import (
    Atom,
    AtomKind,
    Expression,
    Max,
    Min,
    Neg,
    Sum,
    atoms,
    check_dimensions,
    cycle_mean,
    evaluate_at,
)

# Get logger for this module
logger = logging.getLogger(__name__)

MaxFreeTerm = Expression
LinearForm = Dict[int, int]


@dataclass(frozen=True)
class _Signed:
    kind: AtomKind
    source: int
    sign: int


@dataclass(frozen=True)
class NormalFormExpression:
    """
    MAX of max-free terms over extended dimensions.

    ``dimension_map[d - 1] = (source, sign)`` means extended dimension d
    carries ``sign`` times the weight of source dimension ``source``.
    """
    terms: Tuple[MaxFreeTerm, ...]
    dimension_map: Tuple[Tuple[int, int], ...]
    source_k: int

    @property
    def k(self) -> int:
        return len(self.dimension_map)

    def extend_weight(self, vector: Sequence[Fraction]) -> Tuple[Fraction, ...]:
        return tuple(sign * Fraction(vector[source - 1]) for source, sign in self.dimension_map)

    def evaluate(self, point: Sequence[Fraction]) -> Fraction:
        """Value at a single average vector of the source dimensions."""
        extended = self.extend_weight(point)
        return max(evaluate_at(term, extended) for term in self.terms)

    def evaluate_periodic(self, prefix: Sequence[Sequence[Fraction]],
                          cycle: Sequence[Sequence[Fraction]]) -> Fraction:
        return self.evaluate(cycle_mean(cycle))


def _push_negation(expr: Expression, negated: bool = False):
    if isinstance(expr, Atom):
        if negated:
            return _Signed(expr.kind.flipped(), expr.dim, -1)
        return _Signed(expr.kind, expr.dim, 1)
    if isinstance(expr, Neg):
        return _push_negation(expr.child, not negated)
    children = tuple(_push_negation(c, negated) for c in expr.children)
    if isinstance(expr, Sum):
        return Sum(children)
    if isinstance(expr, Min):
        return Max(children) if negated else Min(children)
    return Min(children) if negated else Max(children)


def _distribute(expr) -> List:
    if isinstance(expr, _Signed):
        return [expr]
    expanded = [_distribute(c) for c in expr.children]
    if isinstance(expr, Max):
        return [term for child in expanded for term in child]
    node = type(expr)
    return [node(tuple(combo)) for combo in itertools.product(*expanded)]


def normalize(expr: Expression, k: int) -> NormalFormExpression:
    """
    Rewrite an expression into normal form.

    Args:
        expr: Source expression
        k: Dimension count of the weights it will be paired with

    Returns:
        NormalFormExpression whose value on every periodic play equals the
        source expression's value under the extended weights
    """
    check_dimensions(expr, k)
    signed_terms = _distribute(_push_negation(expr))

    allocation: Dict[Tuple[int, int, int], int] = {}

    def relabel(node, seen: Dict[Tuple[int, int], int]):
        if isinstance(node, _Signed):
            occurrence = seen.get((node.source, node.sign), 0)
            seen[(node.source, node.sign)] = occurrence + 1
            key = (node.source, node.sign, occurrence)
            if key not in allocation:
                allocation[key] = len(allocation) + 1
            return Atom(node.kind, allocation[key])
        return type(node)(tuple(relabel(c, seen) for c in node.children))

    terms = tuple(relabel(term, {}) for term in signed_terms)
    dimension_map = tuple((source, sign) for (source, sign, _), _ in
                          sorted(allocation.items(), key=lambda item: item[1]))
    logger.debug(f"Normalized expression into {len(terms)} terms over {len(dimension_map)} dimensions")
    return NormalFormExpression(terms, dimension_map, k)


def min_of_sums(term: MaxFreeTerm) -> List[LinearForm]:
    """
    Distribute SUM over MIN.

    The term's value at atom values r equals the minimum over the returned
    forms of ``sum(count * r[dim])``.
    """
    if isinstance(term, Atom):
        return [{term.dim: 1}]
    if isinstance(term, Min):
        return [form for child in term.children for form in min_of_sums(child)]
    if isinstance(term, Sum):
        rows = []
        for combo in itertools.product(*(min_of_sums(c) for c in term.children)):
            merged: LinearForm = {}
            for form in combo:
                for dim, count in form.items():
                    merged[dim] = merged.get(dim, 0) + count
            rows.append(merged)
        return rows
    raise ValueError(f"{type(term).__name__} does not occur in a max-free term")


def term_atoms(term: MaxFreeTerm) -> Dict[int, AtomKind]:
    """Map each extended dimension used by the term to its atom kind."""
    return {atom.dim: atom.kind for atom in atoms(term)}


def lipschitz_constant(nf: NormalFormExpression) -> int:
    """Largest coefficient sum over all min-of-sums rows (sup-norm Lipschitz bound)."""
    return max(sum(form.values()) for term in nf.terms for form in min_of_sums(term))
