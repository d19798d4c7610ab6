"""One-boolean-per-config abstraction of a model.

Every declared config becomes a single propositional variable whose
truth stands for "the config is enabled": m or y for tristates, y for
booleans, any nonempty text for strings, any number for int and hex.
Expression rewriting maps the tristate connectives onto the boolean
ones and comparisons onto variables per that interpretation.

The mapping is a deliberate weakening.  Comparisons it cannot place
are abstracted to the true formula and surfaced as diagnostics so
callers can see where precision was given up.
"""

from __future__ import annotations

from typing import Mapping

from .cnf import DEFAULT_CLAUSE_CAP, relax
from .evaluator import Configuration, to_str
from .expr import (
    And,
    BOTTOM,
    Const,
    Eq,
    HexVal,
    IdOrConst,
    IntVal,
    KExpr,
    Leaf,
    LiftedConst,
    Neq,
    Not,
    Or,
    StrVal,
    Tri,
    TriVal,
)
from .model import ChoiceDecl, ConfigDecl, ConfigType, KconfigModel, TRI_TYPES
from .prop import (
    FALSE_K,
    PFalse,
    PropFormula,
    TRUE_K,
    pand,
    piff,
    pimplies,
    pnot,
    por,
    pvar,
)


def _show_operand(item: IdOrConst) -> str:
    if isinstance(item, str):
        return item
    if isinstance(item, StrVal):
        return f'"{item.text}"'
    return to_str(item)


def _note(diagnostics: list[str] | None, message: str) -> None:
    if diagnostics is not None:
        diagnostics.append(message)


def _rewrite_leaf(
    item: IdOrConst, model: KconfigModel, diagnostics: list[str] | None
) -> PropFormula:
    if isinstance(item, str):
        if not model.declares(item):
            return FALSE_K
        if model.config(item).type in TRI_TYPES:
            return pvar(item)
        return FALSE_K
    if isinstance(item, TriVal):
        return FALSE_K if item.value == Tri.N else TRUE_K
    # Other constants evaluate to n in every configuration.
    return FALSE_K


def _table_lookup(type_: ConfigType, lit: Const) -> bool | None:
    """Truth of Var(X) implied by ``X = lit``; None when unplaced."""

    if type_ is ConfigType.TRISTATE:
        if isinstance(lit, TriVal):
            return lit.value != Tri.N
        return None
    if type_ is ConfigType.BOOLEAN:
        if lit == TriVal(Tri.Y):
            return True
        if lit == TriVal(Tri.N):
            return False
        return None
    if type_ is ConfigType.STRING:
        if isinstance(lit, StrVal):
            return lit.text != ""
        return None
    if type_ is ConfigType.INT:
        if isinstance(lit, IntVal):
            return True
        if lit == StrVal(""):
            return False
        return None
    # hex
    if isinstance(lit, HexVal):
        return True
    if lit == StrVal(""):
        return False
    return None


def _rewrite_comparison(
    left: IdOrConst,
    right: IdOrConst,
    negated: bool,
    model: KconfigModel,
    diagnostics: list[str] | None,
) -> PropFormula:
    op = "!=" if negated else "="
    shown = f"{_show_operand(left)} {op} {_show_operand(right)}"

    def resolve(item: IdOrConst) -> IdOrConst:
        # Undeclared identifiers always hold their own name as text.
        if isinstance(item, str) and not model.declares(item):
            return StrVal(item)
        return item

    left = resolve(left)
    right = resolve(right)
    left_var = isinstance(left, str)
    right_var = isinstance(right, str)

    if left_var and right_var:
        if negated:
            _note(diagnostics, f"unsupported comparison {shown}; kept as true")
            return TRUE_K
        return piff(pvar(left), pvar(right), from_equality=True)

    if left_var or right_var:
        name = left if left_var else right
        lit = right if left_var else left
        truth = _table_lookup(model.config(name).type, lit)
        if truth is None:
            _note(diagnostics, f"unsupported comparison {shown}; kept as true")
            return TRUE_K
        result = pvar(name) if truth else pnot(pvar(name))
        return pnot(result) if negated else result

    _note(diagnostics, f"literal comparison {shown}; kept as true")
    return TRUE_K


def rewrite_expr(
    e: KExpr, model: KconfigModel, diagnostics: list[str] | None = None
) -> PropFormula:
    if isinstance(e, Leaf):
        return _rewrite_leaf(e.item, model, diagnostics)
    if isinstance(e, Not):
        return pnot(rewrite_expr(e.operand, model, diagnostics))
    if isinstance(e, And):
        return pand(
            rewrite_expr(e.left, model, diagnostics),
            rewrite_expr(e.right, model, diagnostics),
        )
    if isinstance(e, Or):
        return por(
            rewrite_expr(e.left, model, diagnostics),
            rewrite_expr(e.right, model, diagnostics),
        )
    if isinstance(e, Eq):
        return _rewrite_comparison(e.left, e.right, False, model, diagnostics)
    if isinstance(e, Neq):
        return _rewrite_comparison(e.left, e.right, True, model, diagnostics)
    raise TypeError(f"not an expression node: {e!r}")


def prop_default_clause(
    cfg: ConfigDecl, model: KconfigModel, diagnostics: list[str] | None = None
) -> PropFormula:
    prompt_p = rewrite_expr(cfg.prompt, model, diagnostics)
    var = pvar(cfg.name)
    tri = cfg.type in TRI_TYPES
    chain: list[tuple[PropFormula, PropFormula]] = []
    for entry in cfg.defaults:
        cond_p = rewrite_expr(entry.condition, model, diagnostics)
        if isinstance(cond_p, PFalse):
            continue
        if not tri:
            chain.append((cond_p, var))
        elif isinstance(entry.value, Leaf):
            body = _rewrite_comparison(
                cfg.name, entry.value.item, False, model, diagnostics
            )
            chain.append((cond_p, body))
        else:
            value_p = rewrite_expr(entry.value, model, diagnostics)
            chain.append((cond_p, piff(var, value_p, from_equality=True)))
    default_p: PropFormula = pnot(var)
    for cond_p, body in reversed(chain):
        default_p = pand(
            pimplies(cond_p, body),
            pimplies(pnot(cond_p), default_p),
        )
    return por(prompt_p, default_p)


def prop_bounds_clause(
    cfg: ConfigDecl,
    model: KconfigModel,
    diagnostics: list[str] | None = None,
    cap: int = DEFAULT_CLAUSE_CAP,
) -> PropFormula:
    rev_p = relax(rewrite_expr(cfg.reverse_dep, model, diagnostics), cap)
    prompt_p = rewrite_expr(cfg.prompt, model, diagnostics)
    var = pvar(cfg.name)
    return pand(pimplies(rev_p, var), pimplies(var, prompt_p))


def prop_choice_clause(
    ch: ChoiceDecl,
    model: KconfigModel,
    diagnostics: list[str] | None = None,
    exactly_one: bool = False,
) -> PropFormula:
    prompt_p = rewrite_expr(ch.prompt, model, diagnostics)
    members = []
    for name in ch.members:
        if not model.declares(name):
            _note(diagnostics, f"choice member {name} is undeclared; skipped")
            continue
        members.append(pvar(name))
    parts: list[PropFormula] = []
    for i in range(len(members)):
        for j in range(i + 1, len(members)):
            parts.append(por(pnot(members[i]), pnot(members[j])))
    if members and (exactly_one or ch.mandatory):
        parts.append(por(*members))
    return pimplies(prompt_p, pand(*parts))


def build_formula(
    model: KconfigModel,
    exactly_one: bool = False,
    diagnostics: list[str] | None = None,
    cap: int = DEFAULT_CLAUSE_CAP,
) -> PropFormula:
    """Conjunction of the per-config and per-choice clauses.

    Ranges impose nothing here because values are abstracted away,
    and no module-gating clause is emitted: the abstraction treats
    module support as available.
    """

    parts: list[PropFormula] = []
    for cfg in model.configs:
        parts.append(prop_default_clause(cfg, model, diagnostics))
        parts.append(prop_bounds_clause(cfg, model, diagnostics, cap))
    for ch in model.choices:
        parts.append(prop_choice_clause(ch, model, diagnostics, exactly_one))
    if diagnostics is not None:
        # The same expression is rewritten for several clauses; keep
        # one note per distinct message.
        unique = list(dict.fromkeys(diagnostics))
        diagnostics[:] = unique
    return pand(*parts)


def alpha(type_: ConfigType, value: LiftedConst) -> bool:
    """Boolean reading of a stored value, by config type."""

    if value is BOTTOM:
        raise ValueError("declared configs never hold the undefined value")
    if type_ is ConfigType.BOOLEAN:
        return value == TriVal(Tri.Y)
    if type_ is ConfigType.TRISTATE:
        return isinstance(value, TriVal) and value.value != Tri.N
    if type_ is ConfigType.STRING:
        return isinstance(value, StrVal) and value.text != ""
    # int and hex: any number counts, the empty text does not.
    return not (isinstance(value, StrVal) and value.text == "")


def abstract_configuration(
    model: KconfigModel, c: Configuration | Mapping
) -> dict[str, bool]:
    """Map a configuration to its boolean image over declared configs."""

    return {cfg.name: alpha(cfg.type, c[cfg.name]) for cfg in model.configs}
