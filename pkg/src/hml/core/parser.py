"""Text syntax for formulas and sequents.

Grammar, loosest binding first: ``->`` (right-associative), ``|``, ``&``
(both left-associative), then the prefix operators ``-``, ``[n]`` and ``[]``.
Constants are ``bot`` and ``top``; any other lower-case identifier is an atom.
"""

import logging
from typing import List, Optional

from lark import Lark, Transformer, v_args
from lark.exceptions import LarkError, VisitError

from hml.core.sequent import Sequent
from hml.core.syntax import (
    BOT,
    TOP,
    And,
    Atom,
    Box,
    Formula,
    Imp,
    Neg,
    Or,
    SortError,
    check_wff_h,
    has_indexed_box,
    has_plain_box,
)

logger = logging.getLogger(__name__)

GRAMMAR = r"""
    start: formula
    sequent: [formula_list] "=>" [formula_list]
    formula_list: formula ("," formula)*

    ?formula: disj
        | disj "->" formula -> imp
    ?disj: conj
        | disj "|" conj -> or_
    ?conj: unary
        | conj "&" unary -> and_
    ?unary: "-" unary -> neg
        | BOX unary -> box
        | NAME -> var
        | "(" formula ")"

    BOX: /\[[0-9]*\]/
    NAME: /[a-z][a-zA-Z0-9_]*/

    %import common.WS
    %ignore WS
"""


class FormulaSyntaxError(Exception):
    """Raised when text does not conform to the formula grammar."""

    pass


@v_args(inline=True)
class _ToFormula(Transformer):
    def start(self, formula):
        return formula

    def imp(self, left, right):
        return Imp(left, right)

    def or_(self, left, right):
        return Or(left, right)

    def and_(self, left, right):
        return And(left, right)

    def neg(self, child):
        return Neg(child)

    def box(self, token, child):
        digits = str(token)[1:-1]
        return Box(int(digits) if digits else None, child)

    def var(self, token):
        name = str(token)
        if name == "bot":
            return BOT
        if name == "top":
            return TOP
        return Atom(name)

    def formula_list(self, *items):
        return list(items)

    def sequent(self, left, right):
        return Sequent(left or [], right or [])


_parser = Lark(GRAMMAR, start=["start", "sequent"], parser="lalr", transformer=_ToFormula())


def _parse(text: str, start: str):
    try:
        return _parser.parse(text, start=start)
    except VisitError as e:
        raise FormulaSyntaxError(f"cannot build formula from {text!r}: {e.orig_exc}") from e
    except LarkError as e:
        raise FormulaSyntaxError(f"malformed input {text!r}: {e}") from e


def _check_sort(a: Formula, sort: Optional[str]) -> Formula:
    indexed, plain = has_indexed_box(a), has_plain_box(a)
    if indexed and plain:
        raise SortError("formula mixes indexed boxes [n] with uni-modal boxes []")
    if sort == "h" and plain:
        raise SortError("uni-modal box [] where an indexed formula is expected")
    if sort == "u" and indexed:
        raise SortError("indexed box [n] where a uni-modal formula is expected")
    if indexed:
        check_wff_h(a)
    return a


def parse_formula(text: str) -> Formula:
    """Parse either sort, inferring it from the boxes present.

    Raises:
        FormulaSyntaxError: If the text is malformed
        SortError: If indexed and uni-modal boxes are mixed
        NestingError: If an indexed box does not exceed the rank of its scope
    """
    return _check_sort(_parse(text, "start"), None)


def parse_h(text: str) -> Formula:
    """Parse an indexed formula and enforce the nesting constraint.

    Raises:
        FormulaSyntaxError: If the text is malformed
        SortError: If the text contains a uni-modal box
        NestingError: If the parsed tree violates the nesting constraint
    """
    return _check_sort(_parse(text, "start"), "h")


def parse_u(text: str) -> Formula:
    """Parse a uni-modal formula (reserved atoms allowed)."""
    return _check_sort(_parse(text, "start"), "u")


def parse_sequent(text: str, sort: Optional[str] = None) -> Sequent:
    """Parse ``A, B => C`` into a sequent of a single sort."""
    sequent = _parse(text, "sequent")
    formulas: List[Formula] = [*sequent.left, *sequent.right]
    for a in formulas:
        _check_sort(a, sort)
    if sort is None:
        sorts = {has_indexed_box(a) for a in formulas if has_indexed_box(a) or has_plain_box(a)}
        if len(sorts) > 1:
            raise SortError("sequent mixes indexed and uni-modal formulas")
    return sequent


def parse_goal(text: str, sort: Optional[str] = None) -> Sequent:
    """A formula ``A`` is read as the sequent ``=> A``; sequent text is parsed as is."""
    if "=>" in text:
        return parse_sequent(text, sort)
    a = _check_sort(_parse(text, "start"), sort)
    return Sequent((), (a,))
