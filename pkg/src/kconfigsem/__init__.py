"""Exact semantics, enumeration, and propositional abstraction for a
Kconfig-style configuration language."""

from __future__ import annotations

from .expr import (
    BOTTOM,
    And,
    Eq,
    HexVal,
    IntVal,
    Leaf,
    M,
    N,
    Neq,
    Not,
    Or,
    StrVal,
    Tri,
    TriVal,
    Y,
)
from .evaluator import Configuration, access, bool_interp, eval_expr, to_str
from .model import (
    ChoiceDecl,
    ConfigDecl,
    ConfigType,
    DefaultEntry,
    KconfigModel,
    RangeEntry,
    Violation,
    check_well_formed,
    declared_ids,
    referenced_ids,
    undeclared_ids,
    universe_ids,
)
from .semantics import (
    EnumerationCapExceeded,
    ValidationReport,
    ValueUniverse,
    Verdict,
    build_value_universe,
    enumerate_configurations,
    validate,
)
from .abstraction import (
    abstract_configuration,
    alpha,
    build_formula,
    rewrite_expr,
)
from .cnf import CnfDoc, emit_dimacs, make_numbering, relax
from .modelio import (
    ModelParseError,
    parse_config,
    parse_model,
    serialize_config,
    serialize_model,
)
from .soundness import SoundnessReport, check_soundness

__version__ = "0.1.0"

__all__ = [
    "BOTTOM",
    "And",
    "ChoiceDecl",
    "CnfDoc",
    "ConfigDecl",
    "ConfigType",
    "Configuration",
    "DefaultEntry",
    "EnumerationCapExceeded",
    "Eq",
    "HexVal",
    "IntVal",
    "KconfigModel",
    "Leaf",
    "M",
    "ModelParseError",
    "N",
    "Neq",
    "Not",
    "Or",
    "RangeEntry",
    "SoundnessReport",
    "StrVal",
    "Tri",
    "TriVal",
    "ValidationReport",
    "ValueUniverse",
    "Verdict",
    "Violation",
    "Y",
    "abstract_configuration",
    "access",
    "alpha",
    "bool_interp",
    "build_formula",
    "build_value_universe",
    "check_soundness",
    "check_well_formed",
    "declared_ids",
    "emit_dimacs",
    "enumerate_configurations",
    "eval_expr",
    "make_numbering",
    "parse_config",
    "parse_model",
    "referenced_ids",
    "relax",
    "rewrite_expr",
    "serialize_config",
    "serialize_model",
    "to_str",
    "undeclared_ids",
    "universe_ids",
    "validate",
    "__version__",
]
