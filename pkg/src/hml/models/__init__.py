"""Data models for the workbench."""

from .documents import (
    DerivationData,
    DerivationDocument,
    HilbertLineDocument,
    HilbertProofDocument,
    SequentDocument,
)
from .logic import (
    HIERARCHICAL_SCHEMES,
    UNIMODAL_SCHEMES,
    AxiomScheme,
    DecisionMethod,
    LogicFamily,
    LogicId,
    LogicProfile,
)
from .settings import (
    CorpusSettings,
    CorpusWeights,
    SearchSettings,
    TautologySettings,
    WorkbenchSettings,
)
from .verdict import CheckResult, CorpusRecord, SplitSide, Verdict

__all__ = [
    "AxiomScheme",
    "CheckResult",
    "CorpusRecord",
    "CorpusSettings",
    "CorpusWeights",
    "DecisionMethod",
    "DerivationData",
    "DerivationDocument",
    "HIERARCHICAL_SCHEMES",
    "HilbertLineDocument",
    "HilbertProofDocument",
    "LogicFamily",
    "LogicId",
    "LogicProfile",
    "SearchSettings",
    "SequentDocument",
    "SplitSide",
    "TautologySettings",
    "UNIMODAL_SCHEMES",
    "Verdict",
    "WorkbenchSettings",
]
