"""Logic catalogue models: identifiers, axiom schemes and per-logic profiles."""

from enum import Enum
from typing import List

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class LogicId(str, Enum):
    """Every logic the workbench knows about."""

    K4H = "K4h"
    KD4H = "KD4h"
    S4H = "S4h"
    GLH = "GLh"
    KD45H = "KD45h"
    S5H = "S5h"
    K4 = "K4"
    KD4 = "KD4"
    S4 = "S4"
    GL = "GL"
    K4Q = "K4Q"
    S4Q = "S4Q"


class LogicFamily(str, Enum):
    """Indexed (hierarchical) logics versus plain uni-modal ones."""

    HIERARCHICAL = "hierarchical"
    UNIMODAL = "unimodal"


class DecisionMethod(str, Enum):
    SEQUENT = "sequent"  # cut-free backward search in the logic's own calculus
    GL_REDUCTION = "gl_reduction"  # forget indices, decide in GL
    NONE = "none"  # Hilbert checking only


class AxiomScheme(str, Enum):
    """Axiom schemes, listed in matching order within each family."""

    H = "H"
    KH = "Kh"
    FOUR_H = "4h"
    DH = "Dh"
    LH = "Lh"
    TH = "Th"
    FIVE_H = "5h"
    K = "K"
    FOUR = "4"
    D = "D"
    L = "L"
    T = "T"


HIERARCHICAL_SCHEMES = (
    AxiomScheme.H,
    AxiomScheme.KH,
    AxiomScheme.FOUR_H,
    AxiomScheme.DH,
    AxiomScheme.LH,
    AxiomScheme.TH,
    AxiomScheme.FIVE_H,
)
UNIMODAL_SCHEMES = (AxiomScheme.K, AxiomScheme.FOUR, AxiomScheme.D, AxiomScheme.L, AxiomScheme.T)

HIERARCHICAL_MODAL_RULES = ("Box4hR", "BoxDhR", "BoxShR", "BoxhL")
UNIMODAL_MODAL_RULES = ("Box4R", "BoxDR", "BoxSR", "BoxL", "GLR")


class LogicProfile(BaseModel):
    """One entry of the logic catalogue (``configs/logics.yaml``)."""

    model_config = ConfigDict(
        extra="forbid",
        frozen=True,
        json_schema_extra={
            "example": {
                "id": "K4h",
                "cli_name": "k4h",
                "description": "Hierarchical K4: axioms H, Kh and 4h",
                "family": "hierarchical",
                "axioms": ["H", "Kh", "4h"],
                "modal_rules": ["Box4hR"],
                "decision": "sequent",
            }
        },
    )

    id: LogicId = Field(..., description="Canonical logic identifier")
    cli_name: str = Field(..., pattern=r"^[a-z0-9]+$", description="Lower-case command-line name")
    description: str = Field(..., min_length=5, description="Human-readable summary")
    family: LogicFamily = Field(..., description="Indexed or uni-modal language")
    axioms: List[AxiomScheme] = Field(..., min_length=1, description="Axiom schemes of the logic")
    modal_rules: List[str] = Field(
        default_factory=list, description="Modal rules of the sequent calculus, if any"
    )
    decision: DecisionMethod = Field(..., description="How provability is decided")

    @field_validator("cli_name", mode="before")
    @classmethod
    def lower_cli_name(cls, v: str) -> str:
        return v.lower() if isinstance(v, str) else v

    @model_validator(mode="after")
    def check_family_consistency(self) -> "LogicProfile":
        schemes = HIERARCHICAL_SCHEMES if self.is_hierarchical else UNIMODAL_SCHEMES
        rules = HIERARCHICAL_MODAL_RULES if self.is_hierarchical else UNIMODAL_MODAL_RULES
        stray = [a.value for a in self.axioms if a not in schemes]
        if stray:
            raise ValueError(
                f"{self.id.value}: schemes {stray} do not belong to {self.family.value}"
            )
        bad_rules = [r for r in self.modal_rules if r not in rules]
        if bad_rules:
            raise ValueError(f"{self.id.value}: unknown modal rules {bad_rules}")
        if self.decision == DecisionMethod.SEQUENT and not self.modal_rules:
            raise ValueError(f"{self.id.value}: sequent decision needs modal rules")
        return self

    @property
    def is_hierarchical(self) -> bool:
        return self.family == LogicFamily.HIERARCHICAL

    def has_axiom(self, scheme: AxiomScheme) -> bool:
        return scheme in self.axioms

    def has_rule(self, rule: str) -> bool:
        return rule in self.modal_rules

    @property
    def ordered_axioms(self) -> List[AxiomScheme]:
        """Axioms of this logic in the fixed matching order."""
        order = HIERARCHICAL_SCHEMES if self.is_hierarchical else UNIMODAL_SCHEMES
        return [s for s in order if s in self.axioms]
