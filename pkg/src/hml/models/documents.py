"""JSON documents for proofs exchanged through files and the command line."""

from typing import Any, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator


class HilbertLineDocument(BaseModel):
    """One proof line; ``args`` depend on the rule.

    taut: []  axiom: [scheme?, n?]  mp: [i, j]  nec: [n, i]  hyp: [k]
    Line references are 1-based, hypothesis references 0-based.
    """

    model_config = ConfigDict(extra="forbid")

    formula: str = Field(..., min_length=1)
    rule: Literal["taut", "axiom", "mp", "nec", "hyp"]
    args: List[Any] = Field(default_factory=list)

    @field_validator("rule", mode="before")
    @classmethod
    def normalize_rule(cls, v: Any) -> Any:
        return v.lower() if isinstance(v, str) else v


class HilbertProofDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    hypotheses: List[str] = Field(default_factory=list)
    lines: List[HilbertLineDocument] = Field(default_factory=list)
    goal: Optional[str] = Field(default=None, description="Defaults to the last line")


class SequentDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    left: List[str] = Field(default_factory=list)
    right: List[str] = Field(default_factory=list)


class DerivationData(BaseModel):
    """Rule-specific fields of a derivation node.

    ``principal`` is the main formula (the cut formula for Cut), ``side`` picks
    the conjunct or disjunct of AndL and OrR, ``index`` is the level of an
    indexed modal right rule and ``r_part``/``i_part`` split its context into
    boxes at that level and boxes below it.
    """

    model_config = ConfigDict(extra="forbid")

    principal: Optional[str] = None
    side: Optional[int] = Field(default=None, strict=True)
    index: Optional[int] = Field(default=None, strict=True, ge=0)
    r_part: List[str] = Field(default_factory=list)
    i_part: List[str] = Field(default_factory=list)


class DerivationDocument(BaseModel):
    """A derivation node with its premises nested inside, root first."""

    model_config = ConfigDict(extra="forbid")

    sequent: SequentDocument
    rule: str = Field(..., min_length=1)
    data: DerivationData = Field(default_factory=DerivationData)
    premises: List["DerivationDocument"] = Field(default_factory=list)
