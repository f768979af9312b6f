"""
Mean-payoff expression trees.

Leaves are lim-inf / lim-sup average atoms over a 1-based dimension; inner
nodes are negation and n-ary MIN, MAX and SUM. On an ultimately periodic play
both limits of every dimension equal the cycle average, so evaluation folds
the tree over that single vector.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterator, Sequence, Tuple, Union

from ..exceptions import InputError


class AtomKind(str, Enum):
    LIM_INF = "li"
    LIM_SUP = "ls"

    def flipped(self) -> "AtomKind":
        return AtomKind.LIM_SUP if self is AtomKind.LIM_INF else AtomKind.LIM_INF


@dataclass(frozen=True)
class Atom:
    kind: AtomKind
    dim: int

    def __post_init__(self):
        if self.dim < 1:
            raise InputError(f"atom dimension must be positive, got {self.dim}")


@dataclass(frozen=True)
class Neg:
    child: "Expression"


@dataclass(frozen=True)
class _Nary:
    children: Tuple["Expression", ...]

    def __post_init__(self):
        if len(self.children) < 2:
            raise InputError(f"{type(self).__name__.lower()} needs at least two operands")


class Min(_Nary):
    pass


class Max(_Nary):
    pass


class Sum(_Nary):
    pass


Expression = Union[Atom, Neg, Min, Max, Sum]


def lim_inf(dim: int) -> Atom:
    return Atom(AtomKind.LIM_INF, dim)


def lim_sup(dim: int) -> Atom:
    return Atom(AtomKind.LIM_SUP, dim)


def atoms(expr: Expression) -> Iterator[Atom]:
    """Yield atom occurrences left to right."""
    if isinstance(expr, Atom):
        yield expr
    elif isinstance(expr, Neg):
        yield from atoms(expr.child)
    else:
        for child in expr.children:
            yield from atoms(child)


def max_dimension(expr: Expression) -> int:
    return max(a.dim for a in atoms(expr))


def check_dimensions(expr: Expression, k: int):
    """Raise InputError when an atom refers past the k dimensions of a graph."""
    highest = max_dimension(expr)
    if highest > k:
        raise InputError(f"expression uses dimension {highest} but the graph has k={k}")


def evaluate_at(expr: Expression, point: Sequence[Fraction]) -> Fraction:
    """Fold the tree with every atom replaced by the point's coordinate."""
    if isinstance(expr, Atom):
        return Fraction(point[expr.dim - 1])
    if isinstance(expr, Neg):
        return -evaluate_at(expr.child, point)
    values = [evaluate_at(child, point) for child in expr.children]
    if isinstance(expr, Min):
        return min(values)
    if isinstance(expr, Max):
        return max(values)
    return sum(values, Fraction(0))


def cycle_mean(cycle: Sequence[Sequence[Fraction]]) -> Tuple[Fraction, ...]:
    length = len(cycle)
    return tuple(sum((Fraction(v[d]) for v in cycle), Fraction(0)) / length
                 for d in range(len(cycle[0])))


def evaluate_periodic(expr: Expression, prefix: Sequence[Sequence[Fraction]],
                      cycle: Sequence[Sequence[Fraction]]) -> Fraction:
    """
    Value of the expression on the play ``prefix (cycle)^omega``.

    Args:
        expr: Expression to evaluate
        prefix: Finite weight sequence, ignored by prefix-independence
        cycle: Nonempty repeated weight sequence

    Returns:
        Exact rational value

    Raises:
        InputError: On an empty cycle, ragged vectors or an out-of-range atom
    """
    if not cycle:
        raise InputError("periodic play needs a nonempty cycle")
    k = len(cycle[0])
    for vector in list(prefix) + list(cycle):
        if len(vector) != k:
            raise InputError(f"weight vector of length {len(vector)} in a {k}-dimensional play")
    check_dimensions(expr, k)
    return evaluate_at(expr, cycle_mean(cycle))


def liminf_only_rewrite(expr: Expression) -> Expression:
    """Replace every lim-sup atom by the lim-inf atom of the same dimension."""
    if isinstance(expr, Atom):
        return lim_inf(expr.dim)
    if isinstance(expr, Neg):
        return Neg(liminf_only_rewrite(expr.child))
    return type(expr)(tuple(liminf_only_rewrite(c) for c in expr.children))
