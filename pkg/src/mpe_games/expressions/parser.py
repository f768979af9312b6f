"""
Text form of expressions.

Prefix s-expressions such as ``(sum (min (li 1) (ls 2)) (neg (li 3)))``.
Operators: ``li``/``ls`` with one positive dimension, ``neg`` with one
operand, ``min``/``max``/``sum`` with two or more.
"""

import re
from typing import List, Tuple

from ..exceptions import ExpressionSyntaxError, InputError
from .ast import Atom, AtomKind, Expression, Max, Min, Neg, Sum

_TOKEN = re.compile(r"\s*(?:(\()|(\))|([^\s()]+))")

_NARY = {"min": Min, "max": Max, "sum": Sum}


def _tokenize(text: str) -> List[Tuple[str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None or match.end() == pos:
            break
        if match.lastindex is not None:
            tokens.append((match.group(match.lastindex), match.start(match.lastindex) + 1))
        pos = match.end()
    return tokens


def parse_expression(text: str) -> Expression:
    """
    Parse expression text.

    Raises:
        ExpressionSyntaxError: With the 1-based column of the offending token
    """
    tokens = _tokenize(text)
    if not tokens:
        raise ExpressionSyntaxError("empty expression")
    expr, index = _parse(tokens, 0)
    if index != len(tokens):
        raise ExpressionSyntaxError(f"unexpected trailing token {tokens[index][0]!r}",
                                    f"column {tokens[index][1]}")
    return expr


def _parse(tokens, index):
    if index >= len(tokens):
        raise ExpressionSyntaxError("unexpected end of expression")
    token, column = tokens[index]
    if token != "(":
        raise ExpressionSyntaxError(f"expected '(' but found {token!r}", f"column {column}")
    if index + 1 >= len(tokens):
        raise ExpressionSyntaxError("unexpected end of expression")
    op, op_column = tokens[index + 1]
    index += 2
    if op not in ("li", "ls", "neg") and op not in _NARY:
        raise ExpressionSyntaxError(f"unknown operator {op!r}", f"column {op_column}")

    if op in ("li", "ls"):
        if index >= len(tokens) or not (tokens[index][0].isascii() and tokens[index][0].isdigit()):
            raise ExpressionSyntaxError(f"{op} expects a dimension number", f"column {op_column}")
        try:
            atom = Atom(AtomKind(op), int(tokens[index][0]))
        except InputError as e:
            raise ExpressionSyntaxError(str(e), f"column {tokens[index][1]}")
        return atom, _close(tokens, index + 1)

    operands = []
    while index < len(tokens) and tokens[index][0] != ")":
        child, index = _parse(tokens, index)
        operands.append(child)

    if op == "neg":
        if len(operands) != 1:
            raise ExpressionSyntaxError("neg expects exactly one operand", f"column {op_column}")
        return Neg(operands[0]), _close(tokens, index)
    if len(operands) < 2:
        raise ExpressionSyntaxError(f"{op} expects at least two operands", f"column {op_column}")
    return _NARY[op](tuple(operands)), _close(tokens, index)


def _close(tokens, index):
    if index >= len(tokens) or tokens[index][0] != ")":
        where = f"column {tokens[index][1]}" if index < len(tokens) else None
        raise ExpressionSyntaxError("expected ')'", where)
    return index + 1


def format_expression(expr: Expression) -> str:
    """Print an expression in the form parse_expression reads."""
    if isinstance(expr, Atom):
        return f"({expr.kind.value} {expr.dim})"
    if isinstance(expr, Neg):
        return f"(neg {format_expression(expr.child)})"
    name = type(expr).__name__.lower()
    return f"({name} " + " ".join(format_expression(c) for c in expr.children) + ")"
