"""Hilbert-style proofs: axiom schemes, the tautology oracle, checking and building.

Line references inside proofs are 1-based; hypothesis references are 0-based.
A line *depends* on the hypotheses when it is a Hyp line or an MP over a
dependent line. Necessitation is refused on dependent lines, so a checked proof
with hypotheses G of goal A witnesses that the conjunction of some of G implies
A in the logic.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Set, Tuple, Union

from hml.core.logic_registry import get_profile, get_settings
from hml.core.syntax import (
    BOT,
    And,
    Atom,
    Bottom,
    Box,
    Formula,
    Imp,
    Neg,
    Or,
    PreconditionError,
    Top,
    conj,
    format_formula,
    implies_all,
    is_unimodal,
    is_wff_h,
    rank,
)
from hml.models import AxiomScheme, CheckResult, LogicId

logger = logging.getLogger(__name__)


class TautologyLimitError(Exception):
    """Raised when a propositional skeleton has more atoms than the oracle accepts."""

    pass


# Justifications


@dataclass(frozen=True)
class Taut:
    def __str__(self) -> str:
        return "taut"


@dataclass(frozen=True)
class AxiomRef:
    scheme: Optional[AxiomScheme] = None
    n: Optional[int] = None

    def __str__(self) -> str:
        parts = ["axiom"]
        if self.scheme is not None:
            parts.append(self.scheme.value)
        if self.n is not None:
            parts.append(str(self.n))
        return " ".join(parts)


@dataclass(frozen=True)
class MP:
    """Modus ponens from lines ``i`` and ``j`` (either order)."""

    i: int
    j: int

    def __str__(self) -> str:
        return f"mp {self.i} {self.j}"


@dataclass(frozen=True)
class Nec:
    """Necessitation of ``line`` with box index ``n`` (None in uni-modal logics)."""

    n: Optional[int]
    line: int

    def __str__(self) -> str:
        return f"nec {self.line}" if self.n is None else f"nec {self.n} {self.line}"


@dataclass(frozen=True)
class Hyp:
    k: int

    def __str__(self) -> str:
        return f"hyp {self.k}"


Justification = Union[Taut, AxiomRef, MP, Nec, Hyp]


@dataclass(frozen=True)
class HilbertLine:
    formula: Formula
    justification: Justification


@dataclass(frozen=True)
class HilbertProof:
    hypotheses: Tuple[Formula, ...]
    lines: Tuple[HilbertLine, ...]

    @property
    def goal(self) -> Optional[Formula]:
        return self.lines[-1].formula if self.lines else None

    def __len__(self) -> int:
        return len(self.lines)

    def render(self) -> str:
        out = [f"hyp {k}: {format_formula(h)}" for k, h in enumerate(self.hypotheses)]
        width = len(str(len(self.lines)))
        for number, line in enumerate(self.lines, start=1):
            text = format_formula(line.formula)
            out.append(f"{number:>{width}}. {text}    [{line.justification}]")
        return "\n".join(out)


@dataclass(frozen=True)
class AxiomMatch:
    """A recognised axiom instance: the scheme, its level ``n`` and the A/B components."""

    scheme: AxiomScheme
    n: Optional[int]
    components: Tuple[Formula, ...]


# Tautology oracle


def _skeleton_atoms(a: Formula, found: Dict[Formula, int]) -> None:
    if isinstance(a, (Atom, Box)):
        found.setdefault(a, len(found))
    elif isinstance(a, Neg):
        _skeleton_atoms(a.child, found)
    elif isinstance(a, (And, Or, Imp)):
        _skeleton_atoms(a.left, found)
        _skeleton_atoms(a.right, found)


def _atom_mask(i: int, width: int) -> int:
    """Bit b is set iff assignment b makes skeleton atom i true."""
    block_size = 1 << i
    mask = ((1 << block_size) - 1) << block_size
    span = block_size * 2
    while span < width:
        mask |= mask << span
        span *= 2
    return mask & ((1 << width) - 1)


def tautology(a: Formula, max_atoms: Optional[int] = None) -> bool:
    """Classical validity of ``a`` with maximal boxed subformulas read as atoms.

    Raises:
        TautologyLimitError: If the skeleton has more than ``max_atoms`` atoms
    """
    limit = max_atoms if max_atoms is not None else get_settings().tautology.max_atoms
    found: Dict[Formula, int] = {}
    _skeleton_atoms(a, found)
    if len(found) > limit:
        raise TautologyLimitError(
            f"{len(found)} skeleton atoms exceed the limit of {limit}: {format_formula(a)}"
        )
    width = 1 << len(found)
    full = (1 << width) - 1
    masks = {f: _atom_mask(i, width) for f, i in found.items()}

    def value(b: Formula) -> int:
        if isinstance(b, (Atom, Box)):
            return masks[b]
        if isinstance(b, Bottom):
            return 0
        if isinstance(b, Top):
            return full
        if isinstance(b, Neg):
            return full & ~value(b.child)
        if isinstance(b, And):
            return value(b.left) & value(b.right)
        if isinstance(b, Or):
            return value(b.left) | value(b.right)
        return full & (~value(b.left) | value(b.right))

    return value(a) == full


# Axiom schemes


def _match(scheme: AxiomScheme, a: Formula) -> Optional[AxiomMatch]:
    """Match one scheme structurally.

    Well-formedness of ``a`` supplies the index side conditions.
    """
    if scheme in (AxiomScheme.DH, AxiomScheme.D):
        if isinstance(a, Neg) and isinstance(a.child, Box) and a.child.child == BOT:
            return AxiomMatch(scheme, a.child.index, ())
        return None
    if not isinstance(a, Imp):
        return None
    lhs, rhs = a.left, a.right
    if scheme in (AxiomScheme.KH, AxiomScheme.K):
        if (
            isinstance(lhs, Box)
            and isinstance(lhs.child, Imp)
            and isinstance(rhs, Imp)
            and rhs.left == Box(lhs.index, lhs.child.left)
            and rhs.right == Box(lhs.index, lhs.child.right)
        ):
            return AxiomMatch(scheme, lhs.index, (lhs.child.left, lhs.child.right))
        return None
    if scheme in (AxiomScheme.TH, AxiomScheme.T):
        if isinstance(lhs, Box) and lhs.child == rhs:
            return AxiomMatch(scheme, lhs.index, (rhs,))
        return None
    if scheme == AxiomScheme.FOUR:
        if isinstance(lhs, Box) and rhs == Box(None, lhs):
            return AxiomMatch(scheme, None, (lhs.child,))
        return None
    if scheme == AxiomScheme.L:
        if isinstance(rhs, Box) and lhs == Box(None, Imp(rhs, rhs.child)):
            return AxiomMatch(scheme, None, (rhs.child,))
        return None

    # Indexed schemes relating level n to level n + 1.
    if scheme == AxiomScheme.H:
        if (
            isinstance(lhs, Box)
            and isinstance(rhs, Box)
            and lhs.index is not None
            and rhs.index == lhs.index + 1
            and lhs.child == rhs.child
        ):
            return AxiomMatch(scheme, lhs.index, (lhs.child,))
        return None
    if scheme == AxiomScheme.FOUR_H:
        if isinstance(lhs, Box) and lhs.index is not None and rhs == Box(lhs.index + 1, lhs):
            return AxiomMatch(scheme, lhs.index, (lhs.child,))
        return None
    if scheme == AxiomScheme.LH:
        if (
            isinstance(rhs, Box)
            and rhs.index is not None
            and lhs == Box(rhs.index + 1, Imp(rhs, rhs.child))
        ):
            return AxiomMatch(scheme, rhs.index, (rhs.child,))
        return None
    if scheme == AxiomScheme.FIVE_H:
        if (
            isinstance(lhs, Neg)
            and isinstance(lhs.child, Box)
            and lhs.child.index is not None
            and rhs == Box(lhs.child.index + 1, lhs)
        ):
            return AxiomMatch(scheme, lhs.child.index, (lhs.child.child,))
        return None
    return None


def _well_formed(logic: LogicId, a: Formula) -> bool:
    return is_wff_h(a) if get_profile(logic).is_hierarchical else is_unimodal(a)


def is_axiom_instance(logic: LogicId, a: Formula) -> Optional[AxiomMatch]:
    """First scheme of ``logic`` (in the fixed matching order) that ``a`` instantiates."""
    if not _well_formed(logic, a):
        return None
    for scheme in get_profile(logic).ordered_axioms:
        found = _match(scheme, a)
        if found is not None:
            return found
    return None


def axiom_instance(scheme: AxiomScheme, n: Optional[int], *components: Formula) -> Formula:
    """Build the instance of ``scheme`` at level ``n`` over ``components`` (A, or A and B)."""
    a = components[0] if components else BOT
    if scheme in (AxiomScheme.KH, AxiomScheme.K):
        b = components[1]
        return Imp(Box(n, Imp(a, b)), Imp(Box(n, a), Box(n, b)))
    if scheme in (AxiomScheme.DH, AxiomScheme.D):
        return Neg(Box(n, BOT))
    if scheme in (AxiomScheme.TH, AxiomScheme.T):
        return Imp(Box(n, a), a)
    if scheme == AxiomScheme.FOUR:
        return Imp(Box(None, a), Box(None, Box(None, a)))
    if scheme == AxiomScheme.L:
        return Imp(Box(None, Imp(Box(None, a), a)), Box(None, a))
    assert n is not None
    if scheme == AxiomScheme.H:
        return Imp(Box(n, a), Box(n + 1, a))
    if scheme == AxiomScheme.FOUR_H:
        return Imp(Box(n, a), Box(n + 1, Box(n, a)))
    if scheme == AxiomScheme.LH:
        return Imp(Box(n + 1, Imp(Box(n, a), a)), Box(n, a))
    return Imp(Neg(Box(n, a)), Box(n + 1, Neg(Box(n, a))))


# Checking


def _check_line(
    logic: LogicId,
    proof: HilbertProof,
    number: int,
    depends: List[bool],
) -> Tuple[Optional[str], bool]:
    """Returns (failure reason or None, whether the line depends on hypotheses)."""
    line = proof.lines[number - 1]
    f = line.formula
    j = line.justification
    hierarchical = get_profile(logic).is_hierarchical

    def cited(ref: int) -> Optional[Formula]:
        return proof.lines[ref - 1].formula if 1 <= ref < number else None

    if not _well_formed(logic, f):
        return f"{format_formula(f)} is not well formed in {logic.value}", False

    if isinstance(j, Taut):
        try:
            ok = tautology(f)
        except TautologyLimitError as e:
            return str(e), False
        return (None if ok else "not a tautology"), False

    if isinstance(j, AxiomRef):
        profile = get_profile(logic)
        if j.scheme is None:
            found = is_axiom_instance(logic, f)
        elif not profile.has_axiom(j.scheme):
            return f"scheme {j.scheme.value} is not an axiom of {logic.value}", False
        else:
            found = _match(j.scheme, f)
        if found is None:
            return f"not an axiom instance of {logic.value}", False
        if j.n is not None and found.n != j.n:
            return f"instance has level {found.n}, not {j.n}", False
        return None, False

    if isinstance(j, MP):
        a, b = cited(j.i), cited(j.j)
        if a is None or b is None:
            return f"mp cites a line that is not earlier: {j.i}, {j.j}", False
        if b == Imp(a, f) or a == Imp(b, f):
            return None, depends[j.i - 1] or depends[j.j - 1]
        return "mp premises do not match", False

    if isinstance(j, Nec):
        body = cited(j.line)
        if body is None:
            return f"nec cites line {j.line}, which is not earlier", False
        if depends[j.line - 1]:
            return "necessitation over a hypothesis-dependent line", False
        if hierarchical:
            if j.n is None:
                return "nec needs an index in an indexed logic", False
            if j.n <= rank(body):
                return f"index {j.n} does not exceed the rank {rank(body)} of line {j.line}", False
        elif j.n is not None:
            return "nec takes no index in a uni-modal logic", False
        if f != Box(j.n, body):
            return f"expected {format_formula(Box(j.n, body))}", False
        return None, False

    if isinstance(j, Hyp):
        if not 0 <= j.k < len(proof.hypotheses):
            return f"no hypothesis {j.k}", True
        if proof.hypotheses[j.k] != f:
            return f"hypothesis {j.k} is {format_formula(proof.hypotheses[j.k])}", True
        return None, True

    return f"unknown justification {j!r}", False


def check_hilbert_proof(
    logic: LogicId, proof: HilbertProof, goal: Optional[Formula] = None
) -> CheckResult:
    """Check every line of ``proof`` in ``logic`` and that the last line is ``goal``.

    Returns:
        CheckResult whose position is ``line <k>`` for the first failing line
    """
    for k, h in enumerate(proof.hypotheses):
        if not _well_formed(logic, h):
            return CheckResult.fail(f"hypothesis {k}", f"{format_formula(h)} is not well formed")
    if not proof.lines:
        return CheckResult.fail(None, "proof has no lines")

    depends: List[bool] = []
    for number in range(1, len(proof.lines) + 1):
        reason, dep = _check_line(logic, proof, number, depends)
        if reason is not None:
            logger.debug(f"Hilbert check failed at line {number}: {reason}")
            return CheckResult.fail(f"line {number}", reason)
        depends.append(dep)

    if goal is not None and proof.goal != goal:
        return CheckResult.fail(
            f"line {len(proof.lines)}", f"last line is not the goal {format_formula(goal)}"
        )
    return CheckResult.ok()


# Z-translation


def z_translate(a: Formula, z: Formula, n: int) -> Formula:
    """Guard every box of index at least ``n`` with ``z``.

    Raises:
        PreconditionError: If ``rank(z) >= n``
    """
    if rank(z) >= n:
        raise PreconditionError(f"z_translate needs rank(z) < {n}, got {rank(z)}")
    return _z(a, z, n)


def _z(a: Formula, z: Formula, n: int) -> Formula:
    if isinstance(a, Box):
        body = _z(a.child, z, n)
        return Box(a.index, body if a.index < n else Imp(z, body))
    if isinstance(a, Neg):
        return Neg(_z(a.child, z, n))
    if isinstance(a, (And, Or, Imp)):
        return type(a)(_z(a.left, z, n), _z(a.right, z, n))
    return a


# Building


class ProofBuilder:
    """Incrementally assemble a HilbertProof, reusing lines already present."""

    def __init__(self, logic: LogicId, hypotheses: Sequence[Formula] = ()):
        self.logic = logic
        self.hypotheses = tuple(hypotheses)
        self.lines: List[HilbertLine] = []
        self.depends: List[bool] = []
        self._pure: Dict[Formula, int] = {}
        self._any: Dict[Formula, int] = {}

    def formula(self, line: int) -> Formula:
        return self.lines[line - 1].formula

    def find(self, f: Formula, pure: bool = False) -> Optional[int]:
        return self._pure.get(f) if pure else self._any.get(f)

    def _append(self, f: Formula, justification: Justification, depends: bool) -> int:
        self.lines.append(HilbertLine(f, justification))
        self.depends.append(depends)
        number = len(self.lines)
        self._any.setdefault(f, number)
        if not depends:
            self._pure.setdefault(f, number)
        return number

    def _add(self, f: Formula, justification: Justification, depends: bool) -> int:
        existing = self._pure.get(f)
        if existing is None and depends:
            existing = self._any.get(f)
        if existing is not None:
            return existing
        return self._append(f, justification, depends)

    def taut(self, f: Formula) -> int:
        return self._add(f, Taut(), False)

    def axiom(
        self, f: Formula, scheme: Optional[AxiomScheme] = None, n: Optional[int] = None
    ) -> int:
        return self._add(f, AxiomRef(scheme, n), False)

    def hyp(self, k: int) -> int:
        return self._add(self.hypotheses[k], Hyp(k), True)

    def mp(self, minor: int, major: int) -> int:
        """Detach: ``major`` must be ``formula(minor) -> B``; returns the line of B."""
        implication = self.formula(major)
        if not isinstance(implication, Imp) or implication.left != self.formula(minor):
            raise PreconditionError(
                f"line {major} is not an implication from line {minor}: "
                f"{format_formula(implication)}"
            )
        return self._add(
            implication.right, MP(minor, major), self.depends[minor - 1] or self.depends[major - 1]
        )

    def nec(self, line: int, n: Optional[int] = None) -> int:
        if self.depends[line - 1]:
            raise PreconditionError(f"line {line} depends on hypotheses")
        return self._add(Box(n, self.formula(line)), Nec(n, line), False)

    def derive_by_taut(self, conclusion: Formula, premises: Sequence[int]) -> int:
        """Derive ``conclusion`` from the given lines through one tautology and MPs."""
        found = self.find(conclusion, pure=not any(self.depends[p - 1] for p in premises))
        if found is not None:
            return found
        current = self.taut(implies_all([self.formula(p) for p in premises], conclusion))
        for p in premises:
            current = self.mp(p, current)
        return current

    def embed_lines(self, proof: HilbertProof) -> List[int]:
        """Copy the lines of ``proof``; returns the new number of every copied line."""
        mapping: List[int] = []
        for line in proof.lines:
            j = line.justification
            if isinstance(j, Taut):
                mapping.append(self.taut(line.formula))
            elif isinstance(j, AxiomRef):
                mapping.append(self.axiom(line.formula, j.scheme, j.n))
            elif isinstance(j, MP):
                a, b = mapping[j.i - 1], mapping[j.j - 1]
                if self.formula(b) != Imp(self.formula(a), line.formula):
                    a, b = b, a
                mapping.append(self.mp(a, b))
            elif isinstance(j, Nec):
                mapping.append(self.nec(mapping[j.line - 1], j.n))
            else:
                h = proof.hypotheses[j.k]
                if h not in self.hypotheses:
                    raise PreconditionError(f"embedded hypothesis {format_formula(h)} is unknown")
                mapping.append(self.hyp(self.hypotheses.index(h)))
        return mapping

    def embed(self, proof: HilbertProof) -> int:
        """Copy the lines of ``proof``; returns the line holding its goal."""
        return self.embed_lines(proof)[-1]

    def extract(self, line: int) -> HilbertProof:
        """The lines ``line`` rests on, renumbered, as a proof ending in ``line``."""
        needed: Set[int] = set()
        stack = [line]
        while stack:
            k = stack.pop()
            if k in needed:
                continue
            needed.add(k)
            j = self.lines[k - 1].justification
            if isinstance(j, MP):
                stack.extend((j.i, j.j))
            elif isinstance(j, Nec):
                stack.append(j.line)
        order = sorted(needed)
        number = {old: new for new, old in enumerate(order, start=1)}
        lines: List[HilbertLine] = []
        for k in order:
            kept = self.lines[k - 1]
            j = kept.justification
            if isinstance(j, MP):
                j = MP(number[j.i], number[j.j])
            elif isinstance(j, Nec):
                j = Nec(j.n, number[j.line])
            lines.append(HilbertLine(kept.formula, j))
        return HilbertProof(self.hypotheses, tuple(lines))

    # Derived rules of the indexed logics

    def raise_box(self, box: Box, n: int) -> int:
        """A line ``[m]A -> [n]A`` for m <= n, chaining H instances."""
        m = box.index
        assert m is not None
        current = self.taut(Imp(box, box))
        for level in range(m, n):
            step = self.axiom(axiom_instance(AxiomScheme.H, level, box.child), AxiomScheme.H)
            current = self.derive_by_taut(Imp(box, Box(level + 1, box.child)), [current, step])
        return current

    def lift_box(self, box: Box, n: int) -> int:
        """A line ``[m]A -> [n][m]A`` for m < n: one 4h instance, then H up to n."""
        m = box.index
        assert m is not None
        four = self.axiom(axiom_instance(AxiomScheme.FOUR_H, m, box.child), AxiomScheme.FOUR_H)
        raised = self.raise_box(Box(m + 1, box), n)
        return self.derive_by_taut(Imp(box, Box(n, box)), [four, raised])

    def distribute(
        self,
        boxed: int,
        n: int,
        items: Sequence[Formula],
        context: Sequence[Formula],
        lemmas: Dict[Formula, int],
    ) -> int:
        """From ``[n](l1 -> ... -> lk -> B)`` derive ``/\\context -> [n]B``.

        ``items`` are l1 ... lk; ``lemmas`` maps each of them to a line
        ``g -> [n]li`` with g a member of ``context``. Without context the
        result is ``[n]B`` itself.
        """
        hypothesis = conj(list(context))
        outer = self.formula(boxed)
        assert isinstance(outer, Box)
        rest = outer.child
        current = boxed
        if context:
            current = self.derive_by_taut(Imp(hypothesis, self.formula(boxed)), [boxed])
        for item in items:
            assert isinstance(rest, Imp) and rest.left == item
            kh = axiom_instance(AxiomScheme.KH, n, rest.left, rest.right)
            distribution = self.axiom(kh, AxiomScheme.KH)
            consequence = Box(n, rest.right)
            goal = Imp(hypothesis, consequence) if context else consequence
            current = self.derive_by_taut(goal, [current, distribution, lemmas[rest.left]])
            rest = rest.right
        return current

    def conclude(self, line: int) -> HilbertProof:
        """Finish the proof so that its last line is the formula of ``line``."""
        if line != len(self.lines):
            f = self.formula(line)
            identity = self.taut(Imp(f, f))
            self._append(f, MP(line, identity), self.depends[line - 1])
        return HilbertProof(self.hypotheses, tuple(self.lines))


def deduce(logic: LogicId, proof: HilbertProof) -> HilbertProof:
    """Turn a proof of A from hypotheses G into a hypothesis-free proof of ``conj(G) -> A``.

    Raises:
        PreconditionError: If the proof does not check or is empty
    """
    result = check_hilbert_proof(logic, proof)
    if not result:
        raise PreconditionError(
            f"cannot discharge hypotheses of an invalid proof: {result.describe()}"
        )
    if not proof.hypotheses:
        return proof

    context = conj(list(proof.hypotheses))
    builder = ProofBuilder(logic)
    pure: Dict[int, int] = {}
    guarded: Dict[int, int] = {}
    depends: List[bool] = []
    for number, line in enumerate(proof.lines, start=1):
        j = line.justification
        target = Imp(context, line.formula)
        if isinstance(j, Hyp):
            depends.append(True)
            guarded[number] = builder.taut(target)
            continue
        if isinstance(j, MP) and (depends[j.i - 1] or depends[j.j - 1]):
            depends.append(True)
            guarded[number] = builder.derive_by_taut(target, [guarded[j.i], guarded[j.j]])
            continue
        depends.append(False)
        if isinstance(j, Taut):
            pure[number] = builder.taut(line.formula)
        elif isinstance(j, AxiomRef):
            pure[number] = builder.axiom(line.formula, j.scheme, j.n)
        elif isinstance(j, MP):
            a, b = pure[j.i], pure[j.j]
            if builder.formula(b) != Imp(builder.formula(a), line.formula):
                a, b = b, a
            pure[number] = builder.mp(a, b)
        elif isinstance(j, Nec):
            pure[number] = builder.nec(pure[j.line], j.n)
        guarded[number] = builder.derive_by_taut(target, [pure[number]])
    return builder.conclude(guarded[len(proof.lines)])
