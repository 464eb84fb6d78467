"""Core logic of the workbench: formulas, proofs, search and translations."""

from .codec import DocumentError, dump_document, load_document
from .config_loader import ConfigLoader, ConfigLoadError
from .cutelim import CutEliminator, DProof, eliminate_cuts, reduce_principal
from .hilbert import (
    HilbertLine,
    HilbertProof,
    ProofBuilder,
    TautologyLimitError,
    axiom_instance,
    check_hilbert_proof,
    deduce,
    is_axiom_instance,
    tautology,
    z_translate,
)
from .logic_registry import (
    LogicRegistry,
    UnknownLogicError,
    UnsupportedLogicError,
    get_profile,
    get_registry,
    get_settings,
)
from .necessitation import strong_necessitation
from .parser import FormulaSyntaxError, parse_formula, parse_goal, parse_h, parse_sequent, parse_u
from .props import (
    axiom_instances,
    decide,
    disjunction_split,
    enumerate_formulas,
    gen_corpus,
    gl_h_decide,
)
from .search import ProofSearch, ResourceLimitError, prove
from .sequent import Derivation, DerivationError, Rule, Sequent, check_derivation
from .simulation import derivation_from_hilbert, hilbert_from_derivation
from .syntax import (
    Formula,
    NestingError,
    PreconditionError,
    SortError,
    complexity,
    format_formula,
    is_wff_h,
    rank,
    subst_atoms,
)
from .translate import (
    NotXProofError,
    classify_x,
    goodify,
    is_good_xproof,
    pull_back,
    read_back,
    s_translate,
    sigma_n,
    t_translate,
)
from .witness import (
    apply_witness,
    canonical_witness,
    check_witness,
    forgetful_f,
    format_witness,
    gl_witness_equivalence,
    normalize_indices_gl,
    parse_witness,
)

__all__ = [
    "ConfigLoader",
    "ConfigLoadError",
    "CutEliminator",
    "DProof",
    "Derivation",
    "DerivationError",
    "DocumentError",
    "Formula",
    "FormulaSyntaxError",
    "HilbertLine",
    "HilbertProof",
    "LogicRegistry",
    "NestingError",
    "NotXProofError",
    "PreconditionError",
    "ProofBuilder",
    "ProofSearch",
    "ResourceLimitError",
    "Rule",
    "Sequent",
    "SortError",
    "TautologyLimitError",
    "UnknownLogicError",
    "UnsupportedLogicError",
    "apply_witness",
    "axiom_instance",
    "axiom_instances",
    "canonical_witness",
    "check_derivation",
    "check_hilbert_proof",
    "check_witness",
    "classify_x",
    "complexity",
    "decide",
    "deduce",
    "derivation_from_hilbert",
    "disjunction_split",
    "dump_document",
    "eliminate_cuts",
    "enumerate_formulas",
    "forgetful_f",
    "format_formula",
    "format_witness",
    "gen_corpus",
    "get_profile",
    "get_registry",
    "get_settings",
    "gl_h_decide",
    "gl_witness_equivalence",
    "goodify",
    "hilbert_from_derivation",
    "is_axiom_instance",
    "is_good_xproof",
    "is_wff_h",
    "load_document",
    "normalize_indices_gl",
    "parse_formula",
    "parse_goal",
    "parse_h",
    "parse_sequent",
    "parse_u",
    "parse_witness",
    "prove",
    "pull_back",
    "read_back",
    "rank",
    "reduce_principal",
    "s_translate",
    "sigma_n",
    "strong_necessitation",
    "subst_atoms",
    "t_translate",
    "tautology",
    "z_translate",
]
