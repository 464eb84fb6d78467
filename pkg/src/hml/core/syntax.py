"""Formula trees for the indexed language and the plain box language.

Both sorts share the same node classes. A formula is *indexed* when every box
carries a natural-number index and *uni-modal* when no box does. Indexed
formulas must additionally satisfy the nesting constraint: the index of every
box strictly exceeds the rank of its scope.
"""

import logging
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Union

logger = logging.getLogger(__name__)

RESERVED_ATOM = re.compile(r"^q(0|[1-9][0-9]*)$")


class NestingError(Exception):
    """Raised when a box index does not exceed the rank of its scope."""

    pass


class SortError(Exception):
    """Raised when indexed and uni-modal boxes are mixed or the wrong sort is given."""

    pass


class PreconditionError(Exception):
    """Raised when an operation is called outside its documented domain."""

    pass


@dataclass(frozen=True)
class Atom:
    name: str

    def __str__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True)
class Bottom:
    def __str__(self) -> str:
        return "bot"


@dataclass(frozen=True)
class Top:
    def __str__(self) -> str:
        return "top"


@dataclass(frozen=True)
class Neg:
    child: "Formula"

    def __str__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True)
class Imp:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True)
class Box:
    """A box node; ``index`` is None for the uni-modal box."""

    index: Optional[int]
    child: "Formula"

    def __str__(self) -> str:
        return format_formula(self)


Formula = Union[Atom, Bottom, Top, Neg, And, Or, Imp, Box]
# Readability aliases; the sort is a property of the tree, not of the class.
HFormula = Formula
UFormula = Formula

BOT = Bottom()
TOP = Top()

BINARY = (And, Or, Imp)


def is_reserved(name: str) -> bool:
    """Whether an atom name belongs to the reserved q-family."""
    return RESERVED_ATOM.match(name) is not None


def reserved_atom(i: int) -> Atom:
    return Atom(f"q{i}")


def children(a: Formula) -> Sequence[Formula]:
    if isinstance(a, (Neg, Box)):
        return (a.child,)
    if isinstance(a, BINARY):
        return (a.left, a.right)
    return ()


def iter_subformulas(a: Formula) -> Iterator[Formula]:
    """Yield every subformula occurrence, the formula itself first."""
    stack = [a]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(children(node)))


def subformulas(a: Formula) -> FrozenSet[Formula]:
    return frozenset(iter_subformulas(a))


def atoms(a: Formula) -> FrozenSet[str]:
    return frozenset(n.name for n in iter_subformulas(a) if isinstance(n, Atom))


@lru_cache(maxsize=None)
def rank(a: Formula) -> int:
    """Largest box index occurring in ``a``; -1 when there is none."""
    if isinstance(a, Box):
        inner = rank(a.child)
        return inner if a.index is None else max(a.index, inner)
    return max((rank(c) for c in children(a)), default=-1)


def rank_of(formulas: Iterable[Formula]) -> int:
    return max((rank(f) for f in formulas), default=-1)


@lru_cache(maxsize=None)
def q_rank(a: Formula) -> int:
    """Largest i such that the reserved atom q_i occurs in ``a``; -1 when none does."""
    if isinstance(a, Atom):
        return int(a.name[1:]) if is_reserved(a.name) else -1
    return max((q_rank(c) for c in children(a)), default=-1)


@lru_cache(maxsize=None)
def complexity(a: Formula) -> int:
    """Length of a formula as its node count; every box counts once."""
    return 1 + sum(complexity(c) for c in children(a))


def has_indexed_box(a: Formula) -> bool:
    return any(isinstance(n, Box) and n.index is not None for n in iter_subformulas(a))


def has_plain_box(a: Formula) -> bool:
    return any(isinstance(n, Box) and n.index is None for n in iter_subformulas(a))


def is_unimodal(a: Formula) -> bool:
    return not has_indexed_box(a)


@lru_cache(maxsize=None)
def is_wff_h(a: Formula) -> bool:
    """True iff every box is indexed and its index exceeds the rank of its child."""
    if isinstance(a, Box):
        if a.index is None or a.index < 0:
            return False
        return is_wff_h(a.child) and a.index > rank(a.child)
    return all(is_wff_h(c) for c in children(a))


def check_wff_h(a: Formula) -> Formula:
    """Return ``a`` unchanged or raise the error describing why it is not well formed."""
    for node in iter_subformulas(a):
        if isinstance(node, Box):
            if node.index is None:
                raise SortError(f"uni-modal box in indexed formula: {format_formula(node)}")
            if node.index <= rank(node.child):
                raise NestingError(
                    f"box index {node.index} does not exceed the rank "
                    f"{rank(node.child)} of its scope in {format_formula(node)}"
                )
    return a


def h_box(n: int, a: Formula) -> Box:
    """Build an indexed box, refusing ill-formed results.

    Raises:
        NestingError: If ``n`` is negative or not above ``rank(a)``
        SortError: If ``a`` contains a uni-modal box
    """
    if has_plain_box(a):
        raise SortError(f"uni-modal box under [{n}]: {format_formula(a)}")
    if n < 0 or n <= rank(a):
        raise NestingError(f"[{n}] cannot box a formula of rank {rank(a)}: {format_formula(a)}")
    return Box(n, a)


def u_box(a: Formula) -> Box:
    if has_indexed_box(a):
        raise SortError(f"indexed box under []: {format_formula(a)}")
    return Box(None, a)


def conj(items: Sequence[Formula]) -> Formula:
    """Left-nested conjunction in the given order; ``top`` when empty."""
    if not items:
        return TOP
    result = items[0]
    for item in items[1:]:
        result = And(result, item)
    return result


def disj(items: Sequence[Formula]) -> Formula:
    """Left-nested disjunction in the given order; ``bot`` when empty."""
    if not items:
        return BOT
    result = items[0]
    for item in items[1:]:
        result = Or(result, item)
    return result


def implies_all(antecedents: Sequence[Formula], consequent: Formula) -> Formula:
    """Curried implication ``a1 -> (a2 -> ... -> consequent)``."""
    result = consequent
    for a in reversed(antecedents):
        result = Imp(a, result)
    return result


def conjuncts(a: Formula) -> List[Formula]:
    """Flatten a left-nested conjunction back into its items."""
    items: List[Formula] = []
    while isinstance(a, And):
        items.append(a.right)
        a = a.left
    items.append(a)
    items.reverse()
    return items


def subst_atoms(a: Formula, mapping: Mapping[str, Formula]) -> Formula:
    """Simultaneously replace atoms by formulas.

    Raises:
        NestingError: If the result contains indexed boxes and is not well formed
    """
    if not mapping:
        return a
    result = _subst(a, dict(mapping))
    if has_indexed_box(result):
        check_wff_h(result)
    return result


def _subst(a: Formula, mapping: Dict[str, Formula]) -> Formula:
    if isinstance(a, Atom):
        return mapping.get(a.name, a)
    if isinstance(a, Neg):
        return Neg(_subst(a.child, mapping))
    if isinstance(a, Box):
        return Box(a.index, _subst(a.child, mapping))
    if isinstance(a, BINARY):
        return type(a)(_subst(a.left, mapping), _subst(a.right, mapping))
    return a


# Printing

_PREC_IMP, _PREC_OR, _PREC_AND, _PREC_UNARY = 1, 2, 3, 4


@lru_cache(maxsize=None)
def format_formula(a: Formula) -> str:
    """Render with minimal parentheses; ``parse(format_formula(a)) == a``."""
    return _fmt(a, 0)


def _fmt(a: Formula, ctx: int) -> str:
    if isinstance(a, Atom):
        return a.name
    if isinstance(a, Bottom):
        return "bot"
    if isinstance(a, Top):
        return "top"
    if isinstance(a, Neg):
        return "-" + _fmt(a.child, _PREC_UNARY)
    if isinstance(a, Box):
        label = "[]" if a.index is None else f"[{a.index}]"
        return label + _fmt(a.child, _PREC_UNARY)
    if isinstance(a, Imp):
        text, prec = f"{_fmt(a.left, _PREC_OR)} -> {_fmt(a.right, _PREC_IMP)}", _PREC_IMP
    elif isinstance(a, Or):
        text, prec = f"{_fmt(a.left, _PREC_OR)} | {_fmt(a.right, _PREC_AND)}", _PREC_OR
    else:
        text, prec = f"{_fmt(a.left, _PREC_AND)} & {_fmt(a.right, _PREC_UNARY)}", _PREC_AND
    return f"({text})" if ctx > prec else text


def formula_key(a: Formula) -> str:
    """Total order on formulas used wherever a deterministic ordering is needed."""
    return format_formula(a)


def sorted_formulas(items: Iterable[Formula]) -> List[Formula]:
    return sorted(items, key=formula_key)
