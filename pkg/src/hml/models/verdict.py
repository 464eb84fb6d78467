"""Result objects returned by checkers, deciders and corpus runs."""

from enum import Enum
from typing import Any, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from hml.models.logic import LogicId


class CheckResult(BaseModel):
    """Outcome of a proof check; truthy iff the proof is valid."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    valid: bool
    position: Optional[str] = Field(default=None, description="Failing line or node path")
    reason: str = ""

    def __bool__(self) -> bool:
        return self.valid

    @classmethod
    def ok(cls) -> "CheckResult":
        return cls(valid=True)

    @classmethod
    def fail(cls, position: Optional[str], reason: str) -> "CheckResult":
        return cls(valid=False, position=position, reason=reason)

    def describe(self) -> str:
        if self.valid:
            return "valid"
        where = f" at {self.position}" if self.position is not None else ""
        return f"invalid{where}: {self.reason}"


class Verdict(BaseModel):
    """Decision outcome; ``evidence`` is a Derivation or HilbertProof."""

    model_config = ConfigDict(extra="forbid", frozen=True, arbitrary_types_allowed=True)

    provable: bool
    logic: LogicId
    evidence: Optional[Any] = Field(default=None, description="Proof object when provable")
    nodes: int = Field(default=0, ge=0, description="Search nodes expanded")

    @model_validator(mode="after")
    def evidence_when_provable(self) -> "Verdict":
        if self.provable and self.evidence is None:
            raise ValueError("a provable verdict needs evidence")
        return self


class SplitSide(str, Enum):
    LEFT = "left"
    RIGHT = "right"
    NOT_THEOREM = "not-theorem"


class CorpusRecord(BaseModel):
    """One line of a ``hml corpus`` JSON-lines report."""

    model_config = ConfigDict(extra="forbid")

    index: int = Field(..., ge=0)
    formula: str
    logic: LogicId
    status: str = Field(..., description="provable, not-provable or resource-limit")
    nodes: int = Field(default=0, ge=0)
    translated_status: Optional[str] = Field(
        default=None, description="Status of the t-image in K4Q/S4Q when bridging"
    )
    bridge_violation: Optional[bool] = Field(
        default=None, description="t-image provable while the formula is not"
    )
