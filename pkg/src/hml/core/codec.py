"""JSON documents for Hilbert proofs and derivations."""

import json
import logging
from typing import Any, Dict, List, Optional, Tuple, Union

from pydantic import ValidationError

from hml.core.hilbert import (
    MP,
    AxiomRef,
    HilbertLine,
    HilbertProof,
    Hyp,
    Justification,
    Nec,
    Taut,
)
from hml.core.parser import FormulaSyntaxError, parse_formula
from hml.core.sequent import (
    INDEXED_RIGHT_RULES,
    Derivation,
    DerivationError,
    Rule,
    Sequent,
    modal_premise,
)
from hml.core.syntax import Formula, NestingError, SortError, format_formula
from hml.models import (
    AxiomScheme,
    DerivationData,
    DerivationDocument,
    HilbertLineDocument,
    HilbertProofDocument,
    SequentDocument,
)

logger = logging.getLogger(__name__)

ProofObject = Union[HilbertProof, Derivation]


class DocumentError(Exception):
    """Raised when a proof document cannot be read."""

    pass


def _formula(text: str, where: str) -> Formula:
    try:
        return parse_formula(text)
    except (FormulaSyntaxError, NestingError, SortError) as e:
        raise DocumentError(f"{where}: {e}") from e


def _int(value: Any, where: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise DocumentError(f"{where}: expected an integer, got {value!r}")
    return value


# Hilbert proofs


def _justification_args(j: Justification) -> List[Any]:
    if isinstance(j, AxiomRef):
        args: List[Any] = []
        if j.scheme is not None:
            args.append(j.scheme.value)
            if j.n is not None:
                args.append(j.n)
        return args
    if isinstance(j, MP):
        return [j.i, j.j]
    if isinstance(j, Nec):
        return [j.n, j.line]
    if isinstance(j, Hyp):
        return [j.k]
    return []


def hilbert_to_document(proof: HilbertProof) -> HilbertProofDocument:
    return HilbertProofDocument(
        hypotheses=[format_formula(h) for h in proof.hypotheses],
        lines=[
            HilbertLineDocument(
                formula=format_formula(line.formula),
                rule=str(line.justification).split()[0],
                args=_justification_args(line.justification),
            )
            for line in proof.lines
        ],
    )


def _justification(doc: HilbertLineDocument, where: str) -> Justification:
    args = doc.args
    if doc.rule == "taut":
        return Taut()
    if doc.rule == "axiom":
        if len(args) > 2:
            raise DocumentError(f"{where}: axiom takes at most a scheme and a level")
        scheme = None
        if args:
            try:
                scheme = AxiomScheme(args[0])
            except ValueError as e:
                raise DocumentError(f"{where}: unknown axiom scheme {args[0]!r}") from e
        n = _int(args[1], where) if len(args) == 2 else None
        return AxiomRef(scheme, n)
    if doc.rule == "mp":
        if len(args) != 2:
            raise DocumentError(f"{where}: mp takes two line numbers")
        return MP(_int(args[0], where), _int(args[1], where))
    if doc.rule == "nec":
        if len(args) != 2:
            raise DocumentError(f"{where}: nec takes a level (or null) and a line number")
        n = None if args[0] is None else _int(args[0], where)
        return Nec(n, _int(args[1], where))
    if len(args) != 1:
        raise DocumentError(f"{where}: hyp takes one hypothesis number")
    return Hyp(_int(args[0], where))


def hilbert_from_document(doc: HilbertProofDocument) -> HilbertProof:
    """Build a HilbertProof; checking is left to ``check_hilbert_proof``.

    Raises:
        DocumentError: If a formula or rule argument cannot be read
    """
    hypotheses = tuple(_formula(h, f"hypothesis {k}") for k, h in enumerate(doc.hypotheses))
    lines = []
    for number, line in enumerate(doc.lines, start=1):
        where = f"line {number}"
        lines.append(HilbertLine(_formula(line.formula, where), _justification(line, where)))
    return HilbertProof(hypotheses, tuple(lines))


# Derivations


def _sequent_document(s: Sequent) -> SequentDocument:
    return SequentDocument(
        left=[format_formula(a) for a in s.left], right=[format_formula(a) for a in s.right]
    )


def _node_document(node: Derivation) -> Dict[str, Any]:
    data = DerivationData(
        principal=format_formula(node.principal) if node.principal is not None else None,
        side=node.side,
        index=node.index,
        r_part=[format_formula(a) for a in node.r_part],
        i_part=[format_formula(a) for a in node.i_part],
    )
    doc = DerivationDocument(
        sequent=_sequent_document(node.conclusion), rule=node.rule.value, data=data
    )
    return doc.model_dump(exclude_defaults=True)


def derivation_to_document(d: Derivation) -> Dict[str, Any]:
    """Nested JSON object for ``d``, root first; a shared subproof is written at every use."""
    root = _node_document(d)
    stack = [(d, root)]
    while stack:
        node, out = stack.pop()
        if node.premises:
            out["premises"] = [_node_document(p) for p in node.premises]
            stack.extend(zip(node.premises, out["premises"]))
    return root


def _shallow(raw: Any, where: str) -> Tuple[DerivationDocument, List[Any]]:
    """Validate one node without its premises, which are returned raw."""
    if not isinstance(raw, dict):
        raise DocumentError(f"{where}: a derivation node is a JSON object")
    premises = raw.get("premises", [])
    if not isinstance(premises, list):
        raise DocumentError(f"{where}: premises must be a list of nodes")
    try:
        doc = DerivationDocument.model_validate({**raw, "premises": []})
    except ValidationError as e:
        raise DocumentError(f"{where}: invalid derivation node: {e}") from e
    return doc, premises


def _derivation_node(
    doc: DerivationDocument, premises: Tuple[Derivation, ...], where: str
) -> Derivation:
    try:
        rule = Rule(doc.rule)
    except ValueError as e:
        raise DocumentError(f"{where}: unknown rule {doc.rule!r}") from e
    conclusion = Sequent(
        [_formula(a, where) for a in doc.sequent.left],
        [_formula(a, where) for a in doc.sequent.right],
    )
    data = doc.data
    principal = _formula(data.principal, where) if data.principal is not None else None
    r_part = tuple(_formula(a, where) for a in data.r_part)
    i_part = tuple(_formula(a, where) for a in data.i_part)
    if rule not in INDEXED_RIGHT_RULES:
        if r_part or i_part:
            raise DocumentError(f"{where}: {rule.value} takes no context partition")
    elif not r_part and not i_part:
        try:
            _, r_part, i_part = modal_premise(rule, conclusion.left, principal, data.index)
        except DerivationError as e:
            raise DocumentError(f"{where}: {e}") from e
    return Derivation(conclusion, rule, premises, principal, data.side, data.index, r_part, i_part)


def derivation_from_document(doc: Union[DerivationDocument, Dict[str, Any]]) -> Derivation:
    """Build a Derivation; checking is left to ``check_derivation``.

    Nodes are read without recursion, so deep trees load. Errors name the node
    by its path (``root.0.1``). A missing context partition of an indexed modal
    rule is recomputed from the indices.

    Raises:
        DocumentError: If a node, formula, rule name or field cannot be read
    """
    data = doc.model_dump() if isinstance(doc, DerivationDocument) else doc
    built: Dict[str, Derivation] = {}
    stack: List[Tuple[str, Any, Optional[DerivationDocument]]] = [("root", data, None)]
    while stack:
        where, raw, node = stack.pop()
        if node is None:
            node, premises = _shallow(raw, where)
            stack.append((where, len(premises), node))
            stack.extend((f"{where}.{k}", p, None) for k, p in enumerate(premises))
            continue
        children = tuple(built.pop(f"{where}.{k}") for k in range(raw))
        built[where] = _derivation_node(node, children, where)
    root = built["root"]
    logger.debug(f"Read a derivation of {root.conclusion}")
    return root


# Text


def load_document(text: str) -> Tuple[ProofObject, Optional[Formula]]:
    """Read a Hilbert proof (``lines``) or a derivation (``sequent`` at the root) from JSON.

    Returns:
        The proof and the goal a Hilbert document names, if any

    Raises:
        DocumentError: If the text is not a valid proof document
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"not valid JSON: {e.msg} (line {e.lineno})") from e
    except RecursionError as e:
        raise DocumentError("proof document is nested too deeply") from e
    if not isinstance(data, dict):
        raise DocumentError("a proof document is a JSON object")
    if "sequent" in data:
        return derivation_from_document(data), None
    try:
        doc = HilbertProofDocument.model_validate(data)
    except ValidationError as e:
        raise DocumentError(f"invalid proof document: {e}") from e
    goal = _formula(doc.goal, "goal") if doc.goal is not None else None
    return hilbert_from_document(doc), goal


def dump_document(proof: ProofObject) -> str:
    if isinstance(proof, HilbertProof):
        return hilbert_to_document(proof).model_dump_json(indent=2, exclude_defaults=True)
    return json.dumps(derivation_to_document(proof), indent=2, ensure_ascii=False)
