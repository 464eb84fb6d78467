"""Workbench tunables loaded from ``configs/settings.yaml``."""

from typing import List

from pydantic import BaseModel, ConfigDict, Field, model_validator


class SearchSettings(BaseModel):
    model_config = ConfigDict(extra="forbid")

    node_budget: int = Field(default=200_000, gt=0, description="Search nodes before giving up")


class TautologySettings(BaseModel):
    model_config = ConfigDict(extra="forbid")

    max_atoms: int = Field(
        default=20, ge=1, le=26, description="Largest skeleton the truth-table oracle accepts"
    )


class CorpusWeights(BaseModel):
    model_config = ConfigDict(extra="forbid")

    connective: float = Field(default=0.4, ge=0.0)
    box: float = Field(default=0.3, ge=0.0)
    leaf: float = Field(default=0.3, ge=0.0)

    @model_validator(mode="after")
    def check_total(self) -> "CorpusWeights":
        total = self.connective + self.box + self.leaf
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"corpus weights must sum to 1, got {total}")
        return self


class CorpusSettings(BaseModel):
    model_config = ConfigDict(extra="forbid")

    weights: CorpusWeights = Field(default_factory=CorpusWeights)
    atoms: List[str] = Field(default_factory=lambda: ["p0", "p1", "p2"], min_length=1)
    minimal_index_probability: float = Field(default=0.5, ge=0.0, le=1.0)


class WorkbenchSettings(BaseModel):
    """All tunables; every field has a default so an empty file is valid."""

    model_config = ConfigDict(extra="forbid")

    search: SearchSettings = Field(default_factory=SearchSettings)
    tautology: TautologySettings = Field(default_factory=TautologySettings)
    corpus: CorpusSettings = Field(default_factory=CorpusSettings)
