"""Proof kernel for weak subintuitionistic logics.

Re-exports the formula language, the two proof checkers, the
translations between them, and the normalizer.
"""

from .formula import (
    And,
    Atom,
    BOT,
    Bottom,
    Formula,
    FormulaSyntaxError,
    Imp,
    Or,
    depth,
    format_formula,
    iff,
    parse_formula,
    rank,
)
from .hilbert import (
    Assumption,
    AxiomUse,
    ExportError,
    HilbertProof,
    HilbertReport,
    Line,
    RuleApp,
    RuleId,
    SchemaId,
    available_rules,
    available_schemas,
    check_hilbert,
    fold_assumptions,
    weak_deduction_export,
    weak_deduction_import,
)
from .logic import LogicSpec, PRESETS, parse_logic
from .natded import (
    Leaf,
    NDReport,
    NDRuleId,
    RuleNode,
    available_nd_rules,
    check_nd,
    open_assumptions,
)
from .normalize import (
    CutMeasure,
    CutOccurrence,
    KernelDefect,
    ReductionError,
    TraceStep,
    cut_measure,
    find_cuts,
    is_normal,
    normalize,
    normalize_trace,
    order_major_left,
    reduce_once,
)
from .translate import TranslationError, hilbert_to_nd, nd_to_hilbert

__all__ = [
    "And",
    "Atom",
    "BOT",
    "Bottom",
    "Formula",
    "FormulaSyntaxError",
    "Imp",
    "Or",
    "depth",
    "format_formula",
    "iff",
    "parse_formula",
    "rank",
    "LogicSpec",
    "PRESETS",
    "parse_logic",
    "Assumption",
    "AxiomUse",
    "ExportError",
    "HilbertProof",
    "HilbertReport",
    "Line",
    "RuleApp",
    "RuleId",
    "SchemaId",
    "available_rules",
    "available_schemas",
    "check_hilbert",
    "fold_assumptions",
    "weak_deduction_export",
    "weak_deduction_import",
    "Leaf",
    "NDReport",
    "NDRuleId",
    "RuleNode",
    "available_nd_rules",
    "check_nd",
    "open_assumptions",
    "CutMeasure",
    "CutOccurrence",
    "KernelDefect",
    "ReductionError",
    "TraceStep",
    "cut_measure",
    "find_cuts",
    "is_normal",
    "normalize",
    "normalize_trace",
    "order_major_left",
    "reduce_once",
    "TranslationError",
    "hilbert_to_nd",
    "nd_to_hilbert",
]
