"""Witnesses: index assignments that turn uni-modal formulas into indexed ones.

A witness mirrors the shape of a uni-modal formula: ``()`` at atoms and
constants, ``(w1, w2)`` at binary connectives, the child's witness unchanged
under negation and ``(n, w)`` at a box. ``(n, w)`` is only valid when n exceeds
every number occurring in w, so applying a valid witness always yields a
well-formed indexed formula. On the command line and in JSON, witnesses are
nested arrays such as ``[1, [0, []]]``.
"""

import json
import logging
from typing import Any, Iterator, Optional, Tuple

from hml.core.syntax import (
    BINARY,
    And,
    Atom,
    Bottom,
    Box,
    Formula,
    Imp,
    Neg,
    PreconditionError,
    SortError,
    Top,
    atoms,
    check_wff_h,
    format_formula,
    is_reserved,
    rank,
)

logger = logging.getLogger(__name__)

Witness = Tuple[Any, ...]

LEAF: Witness = ()


def _is_number(x: Any) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def witness_numbers(w: Any) -> Iterator[int]:
    """Every box number occurring in ``w``."""
    if _is_number(w):
        yield w
    elif isinstance(w, tuple):
        for item in w:
            yield from witness_numbers(item)


def check_witness(w: Any, b: Formula) -> bool:
    """Whether ``w`` is a witness for the uni-modal formula ``b``."""
    if isinstance(b, (Atom, Bottom, Top)):
        return w == LEAF
    if isinstance(b, Neg):
        return check_witness(w, b.child)
    if not isinstance(w, tuple) or len(w) != 2:
        return False
    if isinstance(b, BINARY):
        return check_witness(w[0], b.left) and check_witness(w[1], b.right)
    if isinstance(b, Box):
        n, inner = w
        if b.index is not None or not _is_number(n) or n < 0:
            return False
        return check_witness(inner, b.child) and all(n > m for m in witness_numbers(inner))
    return False


def apply_witness(b: Formula, w: Witness) -> Formula:
    """Index every box of ``b`` with the number ``w`` assigns to it.

    Raises:
        PreconditionError: If ``w`` is not a witness for ``b``
    """
    if not check_witness(w, b):
        raise PreconditionError(f"{format_witness(w)} is not a witness for {format_formula(b)}")
    return _apply(b, w)


def _apply(b: Formula, w: Witness) -> Formula:
    if isinstance(b, Neg):
        return Neg(_apply(b.child, w))
    if isinstance(b, BINARY):
        return type(b)(_apply(b.left, w[0]), _apply(b.right, w[1]))
    if isinstance(b, Box):
        return Box(w[0], _apply(b.child, w[1]))
    return b


def forgetful_f(a: Formula) -> Tuple[Formula, Witness]:
    """Drop the indices of ``a``, returning the plain formula and the witness that restores them.

    Raises:
        SortError: If ``a`` contains a uni-modal box
    """
    if isinstance(a, Box):
        if a.index is None:
            raise SortError(f"uni-modal box in indexed formula: {format_formula(a)}")
        child, w = forgetful_f(a.child)
        return Box(None, child), (a.index, w)
    if isinstance(a, Neg):
        child, w = forgetful_f(a.child)
        return Neg(child), w
    if isinstance(a, BINARY):
        left, wl = forgetful_f(a.left)
        right, wr = forgetful_f(a.right)
        return type(a)(left, right), (wl, wr)
    return a, LEAF


def _conjunction_witness(n: int) -> Witness:
    w: Witness = LEAF
    for _ in range(n):
        w = (w, LEAF)
    return w


def canonical_witness(a: Formula) -> Witness:
    """Witness for ``t_translate(a)`` giving each box the index of the box it came from.

    Raises:
        PreconditionError: If ``a`` uses the reserved atoms
    """
    if any(is_reserved(name) for name in atoms(a)):
        raise PreconditionError(f"reserved atoms occur in {format_formula(a)}")
    check_wff_h(a)
    return _canonical(a)


def _canonical(a: Formula) -> Witness:
    if isinstance(a, Box):
        return (a.index, (_conjunction_witness(a.index), _canonical(a.child)))
    if isinstance(a, Neg):
        return _canonical(a.child)
    if isinstance(a, BINARY):
        return (_canonical(a.left), _canonical(a.right))
    return LEAF


def normalize_indices_gl(a: Formula, target: Optional[int] = None) -> Formula:
    """Give every box the least admissible index (one above the rank of its scope).

    GLh proves ``[m]A <-> [n]A`` for any two admissible m and n, so the result is
    GLh-equivalent to ``a``. With ``target``, the outermost boxes get that index
    instead.

    Raises:
        PreconditionError: If ``target`` is not admissible for some outermost box
    """
    check_wff_h(a)
    return _normalize(a, target)


def _normalize(a: Formula, target: Optional[int]) -> Formula:
    if isinstance(a, Box):
        child = _normalize(a.child, None)
        least = rank(child) + 1
        if target is None:
            return Box(least, child)
        if target < least:
            raise PreconditionError(f"[{target}] cannot box {format_formula(child)}")
        return Box(target, child)
    if isinstance(a, Neg):
        return Neg(_normalize(a.child, target))
    if isinstance(a, BINARY):
        return type(a)(_normalize(a.left, target), _normalize(a.right, target))
    return a


def gl_witness_equivalence(b: Formula, u: Witness, v: Witness) -> Formula:
    """``B(u) <-> B(v)`` as a conjunction of both implications.

    Raises:
        PreconditionError: If ``u`` or ``v`` is not a witness for ``b``
    """
    first, second = apply_witness(b, u), apply_witness(b, v)
    return And(Imp(first, second), Imp(second, first))


# Serialization


def format_witness(w: Any) -> str:
    """Compact nested-array form, e.g. ``[1,[0,[]]]``."""
    return json.dumps(_to_lists(w), separators=(",", ":"))


def _to_lists(w: Any) -> Any:
    if isinstance(w, tuple):
        return [_to_lists(item) for item in w]
    return w


def parse_witness(text: str) -> Witness:
    """Read a witness from its nested-array form.

    Raises:
        ValueError: If the text is not a nested array of arrays and naturals
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ValueError(f"witness is not valid JSON: {e.msg}") from e
    if not isinstance(data, list):
        raise ValueError("a witness is a (possibly empty) array")
    return _to_tuples(data)


def _to_tuples(data: Any) -> Any:
    if isinstance(data, list):
        return tuple(_to_tuples(item) for item in data)
    if _is_number(data) and data >= 0:
        return data
    raise ValueError(f"unexpected witness element {data!r}")
