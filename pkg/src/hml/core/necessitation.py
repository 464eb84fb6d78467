"""Strong necessitation: from boxed premises G |- A build G |- [n]A.

The premises split into a lower part (index below n) and a same-level part
(index n). With Z the conjunction of the same-level bodies, every line of a
hypothesis-free proof of the curried statement is Z-translated: in K4h the
translation of each line is derived outright, in S4h it is derived under the
assumption Z. Same-level premises then become harmless, the statement is boxed
at level n and distributed over the premises.
"""

import logging
from typing import Dict, List, Sequence

from hml.core.hilbert import (
    MP,
    AxiomRef,
    HilbertProof,
    Nec,
    ProofBuilder,
    Taut,
    axiom_instance,
    check_hilbert_proof,
    deduce,
    is_axiom_instance,
    z_translate,
)
from hml.core.logic_registry import UnsupportedLogicError
from hml.core.syntax import (
    Box,
    Formula,
    Imp,
    PreconditionError,
    conj,
    format_formula,
    implies_all,
    rank,
)
from hml.models import AxiomScheme, LogicId

logger = logging.getLogger(__name__)

NECESSITATION_LOGICS = (LogicId.K4H, LogicId.S4H)


class _ZTranslator:
    """Re-derives the Z-translation of every line of a hypothesis-free proof."""

    def __init__(self, logic: LogicId, builder: ProofBuilder, z: Formula, n: int):
        self.logic = logic
        self.builder = builder
        self.z = z
        self.n = n
        self.guarded = logic == LogicId.S4H

    def target(self, f: Formula) -> Formula:
        translated = z_translate(f, self.z, self.n)
        return Imp(self.z, translated) if self.guarded else translated

    def run(self, proof: HilbertProof) -> int:
        b = self.builder
        original = b.embed_lines(proof)
        lines: List[int] = []
        for number, line in enumerate(proof.lines):
            f = line.formula
            j = line.justification
            target = self.target(f)
            if isinstance(j, Taut):
                lines.append(b.taut(target))
            elif isinstance(j, AxiomRef):
                lines.append(self._axiom(f, target, original[number]))
            elif isinstance(j, MP):
                lines.append(b.derive_by_taut(target, [lines[j.i - 1], lines[j.j - 1]]))
            elif isinstance(j, Nec):
                lines.append(self._nec(f, j, target, original[number], lines[j.line - 1]))
            else:
                raise PreconditionError("Z-translation needs a hypothesis-free proof")
        return lines[-1]

    def _zt(self, f: Formula) -> Formula:
        return z_translate(f, self.z, self.n)

    def _axiom(self, f: Formula, target: Formula, original: int) -> int:
        b = self.builder
        if self._zt(f) == f:
            return b.derive_by_taut(target, [original])
        found = is_axiom_instance(self.logic, f)
        if found is None:
            raise PreconditionError(f"not an axiom of {self.logic.value}: {format_formula(f)}")
        k = found.n
        assert k is not None and k + 1 >= self.n
        if found.scheme == AxiomScheme.KH:
            support = self._distribution(k, *found.components)
        elif found.scheme == AxiomScheme.H:
            support = self._monotone(k, found.components[0])
        elif found.scheme == AxiomScheme.FOUR_H:
            support = self._transitive(k, found.components[0])
        elif found.scheme == AxiomScheme.TH:
            support = self._reflexive(k, found.components[0])
        else:
            raise PreconditionError(
                f"no Z-translation for {found.scheme.value} in {self.logic.value}"
            )
        return b.derive_by_taut(target, [support])

    def _weaken_under(self, j: int, c: Formula) -> int:
        """``[j]C -> [j](Z -> C)``."""
        b = self.builder
        guarded = Imp(self.z, c)
        boxed = b.nec(b.taut(Imp(c, guarded)), j)
        kh = b.axiom(axiom_instance(AxiomScheme.KH, j, c, guarded), AxiomScheme.KH)
        return b.derive_by_taut(Imp(Box(j, c), Box(j, guarded)), [boxed, kh])

    def _distribution(self, k: int, a: Formula, c: Formula) -> int:
        """Kh at k >= n: ``[k](Z -> (A -> C)) -> ([k](Z -> A) -> [k](Z -> C))``."""
        b = self.builder
        z = self.z
        za, zc = Imp(z, self._zt(a)), Imp(z, self._zt(c))
        zac = Imp(z, Imp(self._zt(a), self._zt(c)))
        shuffle = Imp(za, zc)
        boxed = b.nec(b.taut(Imp(zac, shuffle)), k)
        outer = b.axiom(axiom_instance(AxiomScheme.KH, k, zac, shuffle), AxiomScheme.KH)
        inner = b.axiom(axiom_instance(AxiomScheme.KH, k, za, zc), AxiomScheme.KH)
        goal = Imp(Box(k, zac), Imp(Box(k, za), Box(k, zc)))
        return b.derive_by_taut(goal, [boxed, outer, inner])

    def _monotone(self, k: int, a: Formula) -> int:
        """H: a plain instance above n, an instance weakened under the box at k + 1 = n."""
        b = self.builder
        if k >= self.n:
            body = Imp(self.z, self._zt(a))
            return b.axiom(axiom_instance(AxiomScheme.H, k, body), AxiomScheme.H)
        step = b.axiom(axiom_instance(AxiomScheme.H, k, a), AxiomScheme.H)
        weakened = self._weaken_under(k + 1, a)
        return b.derive_by_taut(Imp(Box(k, a), Box(k + 1, Imp(self.z, a))), [step, weakened])

    def _transitive(self, k: int, a: Formula) -> int:
        """4h: the instance over the translated box, weakened under the box at k + 1."""
        b = self.builder
        lower = self._zt(Box(k, a))
        assert isinstance(lower, Box)
        four = b.axiom(axiom_instance(AxiomScheme.FOUR_H, k, lower.child), AxiomScheme.FOUR_H)
        weakened = self._weaken_under(k + 1, lower)
        return b.derive_by_taut(Imp(lower, Box(k + 1, Imp(self.z, lower))), [four, weakened])

    def _reflexive(self, k: int, a: Formula) -> int:
        """Th at k >= n: ``[k](Z -> A) -> (Z -> A)``, which gives the guarded target."""
        body = Imp(self.z, self._zt(a))
        return self.builder.axiom(axiom_instance(AxiomScheme.TH, k, body), AxiomScheme.TH)

    def _nec(self, f: Formula, j: Nec, target: Formula, original: int, body: int) -> int:
        b = self.builder
        assert j.n is not None
        if j.n < self.n:
            return b.derive_by_taut(target, [original])
        if self.guarded:
            boxed = b.nec(body, j.n)
        else:
            inner = b.formula(body)
            guarded = b.derive_by_taut(Imp(self.z, inner), [body])
            boxed = b.nec(guarded, j.n)
        return b.derive_by_taut(target, [boxed])


def strong_necessitation(
    logic: LogicId,
    premises: Sequence[Formula],
    a: Formula,
    n: int,
    proof_of_a: HilbertProof,
) -> HilbertProof:
    """Turn a proof of ``a`` from boxed premises into a proof of ``[n]a``.

    Args:
        logic: K4h or S4h
        premises: Boxes ``[m]A`` with every m <= n; also the hypotheses of ``proof_of_a``
        a: Goal of ``proof_of_a``, with rank below n
        n: Level of the new box
        proof_of_a: Checked proof of ``a`` from ``premises``

    Returns:
        A proof of ``[n]a`` with the same hypotheses

    Raises:
        UnsupportedLogicError: Outside K4h and S4h
        PreconditionError: If the premises, level or proof are unsuitable
    """
    if logic not in NECESSITATION_LOGICS:
        raise UnsupportedLogicError(
            f"strong necessitation is built for K4h and S4h, not {logic.value}"
        )
    premises = list(premises)
    for p in premises:
        if not isinstance(p, Box) or p.index is None or p.index > n:
            raise PreconditionError(f"premise {format_formula(p)} is not a box of index <= {n}")
    if n <= rank(a):
        raise PreconditionError(f"level {n} does not exceed the rank {rank(a)} of the goal")
    if tuple(premises) != proof_of_a.hypotheses:
        raise PreconditionError("the proof must use exactly the given premises as hypotheses")
    result = check_hilbert_proof(logic, proof_of_a, a)
    if not result:
        raise PreconditionError(f"proof of the goal does not check: {result.describe()}")

    lower = [p for p in premises if p.index < n]
    level = [p for p in premises if p.index == n]
    bodies = [p.child for p in level]
    z = conj(bodies)

    # Hypothesis-free proof of lower -> level -> a.
    statement = implies_all(lower + level, a)
    staging = ProofBuilder(logic)
    discharged = staging.embed(deduce(logic, proof_of_a))
    curried = staging.conclude(staging.derive_by_taut(statement, [discharged]))

    builder = ProofBuilder(logic, premises)
    translated = _ZTranslator(logic, builder, z, n).run(curried)

    # Same-level premises translate to provable boxes [n](Z -> C).
    guards = [builder.nec(builder.taut(Imp(z, c)), n) for c in bodies]
    freed = builder.derive_by_taut(Imp(z, implies_all(lower, a)), [translated] + guards)
    items = bodies + lower
    boxed = builder.nec(builder.derive_by_taut(implies_all(items, a), [freed]), n)

    lemmas: Dict[Formula, int] = {}
    for p in level:
        lemmas.setdefault(p.child, builder.taut(Imp(p, p)))
    for p in lower:
        lemmas.setdefault(p, builder.lift_box(p, n))
    under = builder.distribute(boxed, n, items, premises, lemmas)

    hypotheses = [builder.hyp(k) for k in range(len(premises))]
    final = builder.derive_by_taut(Box(n, a), [under] + hypotheses)
    proof = builder.conclude(final)
    logger.info(
        f"Strong necessitation at level {n}: {len(proof)} lines from {len(premises)} premises"
    )
    return proof
