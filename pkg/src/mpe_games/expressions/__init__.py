"""
Mean-payoff expressions: trees, text form and normal form.
"""

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
    evaluate_periodic,
    lim_inf,
    lim_sup,
    liminf_only_rewrite,
    max_dimension,
)
from .normal_form import (
    LinearForm,
    MaxFreeTerm,
    NormalFormExpression,
    lipschitz_constant,
    min_of_sums,
    normalize,
    term_atoms,
)
from .parser import format_expression, parse_expression

__all__ = [
    "Atom",
    "AtomKind",
    "Expression",
    "Max",
    "Min",
    "Neg",
    "Sum",
    "atoms",
    "check_dimensions",
    "cycle_mean",
    "evaluate_at",
    "evaluate_periodic",
    "lim_inf",
    "lim_sup",
    "liminf_only_rewrite",
    "max_dimension",
    "LinearForm",
    "MaxFreeTerm",
    "NormalFormExpression",
    "lipschitz_constant",
    "min_of_sums",
    "normalize",
    "term_atoms",
    "format_expression",
    "parse_expression",
]
