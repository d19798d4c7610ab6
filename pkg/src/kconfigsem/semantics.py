"""Exact configuration semantics: verdicts, validation, enumeration.

A model's meaning is the set of total configurations that satisfy
every check below:

* ``type``: each declared config holds a value from its type domain.
* ``bounds``: the value sits above the select expression's evaluation;
  while the prompt condition holds it also sits below the prompt's
  evaluation, unless an even stronger select overrides it.  An
  invisible config is not clamped from above: its value is pinned by
  the ``default`` check instead.
* ``default``: an invisible config carries exactly its computed
  default, raised to the select evaluation for tristate-kinded types.
* ``range``: active ranges bound numeric values inclusively.
* ``choice``: a visible choice allows at most one member at ``y`` (all
  others drop to ``n``), boolean choices need a ``y`` member, and
  mandatory choices need an active member.
* ``modules``: when the ``MODULES`` config evaluates to ``n``, no
  identifier may hold ``m``.
* ``undeclared``: referenced-but-undeclared identifiers stay bottom.

Validation reports one verdict per check; enumeration walks a finite
candidate universe and keeps the assignments on which every verdict is
satisfied.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .evaluator import Configuration, access, bool_interp, eval_expr, eval_lifted, to_str
from .expr import (
    BOTTOM,
    And,
    Const,
    Eq,
    HexVal,
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
from .model import (
    MODULES_NAME,
    ChoiceDecl,
    ConfigDecl,
    ConfigType,
    DefaultEntry,
    KconfigModel,
    TRI_TYPES,
    undeclared_ids,
    universe_ids,
)

DEFAULT_ENUMERATION_CAP = 10_000_000


class ConfigurationDomainError(Exception):
    """The configuration does not assign exactly the model universe."""


class EnumerationCapExceeded(Exception):
    """The candidate universe is larger than the enumeration cap."""

    def __init__(self, required: int, cap: int):
        self.required = required
        self.cap = cap
        super().__init__(
            f"universe spans {required} assignments, above the cap of {cap}; "
            f"raise the cap to at least {required} to enumerate this model"
        )


@dataclass(frozen=True)
class Verdict:
    """Outcome of one semantic check against one subject."""

    denotation: str
    subject: str
    satisfied: bool
    diagnostic: str = ""


@dataclass(frozen=True)
class ValidationReport:
    verdicts: tuple[Verdict, ...]

    @property
    def valid(self) -> bool:
        return all(v.satisfied for v in self.verdicts)

    def failures(self) -> tuple[Verdict, ...]:
        return tuple(v for v in self.verdicts if not v.satisfied)


def _show(v: LiftedConst) -> str:
    if v is BOTTOM:
        return "?"
    if isinstance(v, StrVal):
        return repr(v.text)
    return to_str(v)


def _in_type_domain(type_: ConfigType, v: LiftedConst) -> bool:
    if type_ is ConfigType.BOOLEAN:
        return isinstance(v, TriVal) and v.value != Tri.M
    if type_ is ConfigType.TRISTATE:
        return isinstance(v, TriVal)
    if type_ is ConfigType.STRING:
        return isinstance(v, StrVal)
    if type_ is ConfigType.HEX:
        return isinstance(v, HexVal) or v == StrVal("")
    return isinstance(v, IntVal) or v == StrVal("")


def type_verdict(cfg: ConfigDecl, c: Configuration) -> Verdict:
    v = c[cfg.name]
    ok = _in_type_domain(cfg.type, v)
    diag = "" if ok else f"value {_show(v)} is outside the {cfg.type.value} domain"
    return Verdict("type", cfg.name, ok, diag)


def bounds_verdict(cfg: ConfigDecl, c: Configuration) -> Verdict:
    """Select gives the lower bound, the prompt the upper one.

    The upper bound binds only while the prompt condition holds; an
    invisible config takes whatever its defaults force.  A select
    stronger than the prompt also overrides the upper bound.
    """

    lower = eval_expr(cfg.reverse_dep, c)
    upper = eval_expr(cfg.prompt, c)
    v = eval_lifted(c[cfg.name])
    if v < lower:
        return Verdict(
            "bounds",
            cfg.name,
            False,
            f"value evaluates to {to_str(TriVal(v))}, below the select bound "
            f"{to_str(TriVal(lower))}",
        )
    if upper != Tri.N and not upper < lower and v > upper:
        return Verdict(
            "bounds",
            cfg.name,
            False,
            f"value evaluates to {to_str(TriVal(v))}, above the prompt bound "
            f"{to_str(TriVal(upper))}",
        )
    return Verdict("bounds", cfg.name, True)


def resolve_default(
    defaults: Sequence[DefaultEntry], type_: ConfigType, c: Configuration
) -> Const:
    """The value the first active default entry yields.

    Tristate-kinded types evaluate the default expression; entry types
    resolve their single-leaf default through access.  With no active
    entry the result is ``n`` or the empty string respectively.
    """

    for entry in defaults:
        if bool_interp(eval_expr(entry.condition, c)):
            if type_ in TRI_TYPES:
                return TriVal(eval_expr(entry.value, c))
            if not isinstance(entry.value, Leaf):
                raise ValueError(
                    f"default value for {type_.value} config must be a single leaf"
                )
            return access(entry.value.item, c)
    return TriVal(Tri.N) if type_ in TRI_TYPES else StrVal("")


def default_verdict(cfg: ConfigDecl, c: Configuration) -> Verdict:
    if bool_interp(eval_expr(cfg.prompt, c)):
        return Verdict("default", cfg.name, True)
    if cfg.type in TRI_TYPES:
        chosen = resolve_default(cfg.defaults, cfg.type, c)
        forced: Const = TriVal(max(chosen.value, eval_expr(cfg.reverse_dep, c)))
    else:
        forced = resolve_default(cfg.defaults, cfg.type, c)
    ok = c[cfg.name] == forced
    diag = (
        ""
        if ok
        else f"invisible config must hold {_show(forced)}, not {_show(c[cfg.name])}"
    )
    return Verdict("default", cfg.name, ok, diag)


def _numeric(v: Const) -> int | None:
    if isinstance(v, IntVal):
        return v.number
    if isinstance(v, HexVal):
        return v.number
    return None


def range_verdict(cfg: ConfigDecl, c: Configuration) -> Verdict:
    v = c[cfg.name]
    if v == StrVal(""):
        return Verdict("range", cfg.name, True)
    for rng in cfg.ranges:
        if not bool_interp(eval_expr(rng.condition, c)):
            continue
        number = _numeric(v) if not isinstance(v, (TriVal,)) and v is not BOTTOM else None
        if number is None:
            return Verdict(
                "range", cfg.name, False, f"value {_show(v)} is not numeric"
            )
        bounds = []
        for bound in (rng.lower, rng.upper):
            resolved = access(bound, c) if isinstance(bound, str) else bound
            bound_num = _numeric(resolved)
            if bound_num is None:
                return Verdict(
                    "range",
                    cfg.name,
                    False,
                    f"range bound {_show(resolved)} is not numeric",
                )
            bounds.append(bound_num)
        if not bounds[0] <= number <= bounds[1]:
            return Verdict(
                "range",
                cfg.name,
                False,
                f"value {_show(v)} is outside the range {bounds[0]}..{bounds[1]}",
            )
    return Verdict("range", cfg.name, True)


def choice_verdict(ch: ChoiceDecl, c: Configuration, index: int = 0) -> Verdict:
    subject = f"choice[{index}]"
    if not bool_interp(eval_expr(ch.prompt, c)):
        return Verdict("choice", subject, True)
    values = {m: c[m] for m in ch.members}
    active_y = [m for m, v in values.items() if v == TriVal(Tri.Y)]
    if len(active_y) > 1:
        return Verdict(
            "choice",
            subject,
            False,
            f"members {', '.join(active_y)} are both y",
        )
    if len(active_y) == 1:
        chosen = active_y[0]
        others = [m for m in ch.members if m != chosen and values[m] != TriVal(Tri.N)]
        if others:
            return Verdict(
                "choice",
                subject,
                False,
                f"{chosen} is y but {', '.join(others)} did not drop to n",
            )
    if ch.type is ConfigType.BOOLEAN and not active_y:
        return Verdict(
            "choice", subject, False, "boolean choice has no member at y"
        )
    if ch.mandatory:
        active = [
            m
            for m, v in values.items()
            if isinstance(v, TriVal) and v.value > Tri.N
        ]
        if not active:
            return Verdict(
                "choice", subject, False, "mandatory choice has no active member"
            )
    return Verdict("choice", subject, True)


def modules_verdict(model: KconfigModel, c: Configuration) -> Verdict:
    if c.value(MODULES_NAME) != TriVal(Tri.N):
        return Verdict("modules", "model", True)
    offenders = sorted(
        name for name, v in c.items() if isinstance(v, TriVal) and v.value == Tri.M
    )
    if offenders:
        return Verdict(
            "modules",
            "model",
            False,
            f"MODULES is n but {', '.join(offenders)} hold m",
        )
    return Verdict("modules", "model", True)


def undeclared_verdict(model: KconfigModel, c: Configuration) -> Verdict:
    offenders = sorted(
        name for name in undeclared_ids(model) if c.value(name) is not BOTTOM
    )
    if offenders:
        return Verdict(
            "undeclared",
            "model",
            False,
            f"undeclared identifiers must stay unset: {', '.join(offenders)}",
        )
    return Verdict("undeclared", "model", True)


def validate(model: KconfigModel, c: Configuration) -> ValidationReport:
    """Run every semantic check; the configuration must cover exactly
    the model universe."""

    expected = universe_ids(model)
    got = frozenset(c)
    if got != frozenset(expected):
        missing = sorted(frozenset(expected) - got)
        extra = sorted(got - frozenset(expected))
        parts = []
        if missing:
            parts.append(f"missing: {', '.join(missing)}")
        if extra:
            parts.append(f"outside the universe: {', '.join(extra)}")
        raise ConfigurationDomainError("; ".join(parts))
    verdicts: list[Verdict] = []
    for cfg in model.configs:
        verdicts.append(type_verdict(cfg, c))
        verdicts.append(bounds_verdict(cfg, c))
        verdicts.append(default_verdict(cfg, c))
        verdicts.append(range_verdict(cfg, c))
    for index, ch in enumerate(model.choices):
        verdicts.append(choice_verdict(ch, c, index))
    verdicts.append(modules_verdict(model, c))
    verdicts.append(undeclared_verdict(model, c))
    return ValidationReport(tuple(verdicts))


# ---------------------------------------------------------------------------
# Candidate universes and enumeration


_TAG_RANK = {TriVal: 0, StrVal: 1, HexVal: 2, IntVal: 3}


def _candidate_key(v: LiftedConst) -> tuple:
    if v is BOTTOM:
        return (0, 0, "")
    if isinstance(v, TriVal):
        return (1, int(v.value), "")
    return (2, 0, (to_str(v), _TAG_RANK[type(v)]))


@dataclass(frozen=True)
class ValueUniverse:
    """Finite candidate values per universe identifier, in iteration
    order: bottom, then tristates ascending, then rendered text."""

    entries: tuple[tuple[str, tuple[LiftedConst, ...]], ...]

    def __post_init__(self) -> None:
        entries = []
        for name, candidates in sorted(self.entries):
            ordered = tuple(
                sorted(dict.fromkeys(candidates), key=_candidate_key)
            )
            if not ordered:
                raise ValueError(f"no candidate values for {name}")
            entries.append((name, ordered))
        object.__setattr__(self, "entries", tuple(entries))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.entries)

    def candidates(self, name: str) -> tuple[LiftedConst, ...]:
        for entry_name, values in self.entries:
            if entry_name == name:
                return values
        raise KeyError(name)

    @property
    def size(self) -> int:
        total = 1
        for _, values in self.entries:
            total *= len(values)
        return total

    def iter_assignments(self) -> Iterator[Configuration]:
        """Every assignment in canonical order (last name fastest)."""

        names = self.names
        for combo in itertools.product(*(values for _, values in self.entries)):
            yield Configuration(dict(zip(names, combo)))


def _walk_constants(model: KconfigModel) -> Iterator[Const]:
    for cfg in model.configs:
        exprs = [cfg.prompt, cfg.reverse_dep]
        for entry in cfg.defaults:
            exprs.append(entry.value)
            exprs.append(entry.condition)
        for rng in cfg.ranges:
            exprs.append(rng.condition)
            for bound in (rng.lower, rng.upper):
                if not isinstance(bound, str):
                    yield bound
        for e in exprs:
            yield from _expr_constants(e)
    for ch in model.choices:
        yield from _expr_constants(ch.prompt)


def _expr_constants(e: KExpr) -> Iterator[Const]:
    if isinstance(e, Leaf):
        if not isinstance(e.item, str):
            yield e.item
    elif isinstance(e, Not):
        yield from _expr_constants(e.operand)
    elif isinstance(e, (And, Or)):
        yield from _expr_constants(e.left)
        yield from _expr_constants(e.right)
    elif isinstance(e, (Eq, Neq)):
        for side in (e.left, e.right):
            if not isinstance(side, str):
                yield side


def build_value_universe(model: KconfigModel) -> ValueUniverse:
    """The default finite universe used for enumeration.

    Boolean and tristate configs get their full domains.  Numeric
    configs get the empty string, every same-kind constant in the
    model, and each numeric range endpoint with both neighbours to
    probe the boundary.  String configs get the empty string, every
    string constant, and one sentinel occurring nowhere in the model.
    Undeclared identifiers get only bottom.
    """

    constants = list(_walk_constants(model))
    int_consts = sorted({v.number for v in constants if isinstance(v, IntVal)})
    hex_consts = sorted({v.digits for v in constants if isinstance(v, HexVal)})
    str_consts = sorted({v.text for v in constants if isinstance(v, StrVal)})

    int_candidates: set[int] = set(int_consts)
    hex_candidates: set[str] = set(hex_consts)
    for cfg in model.configs:
        for rng in cfg.ranges:
            for bound in (rng.lower, rng.upper):
                if isinstance(bound, IntVal):
                    int_candidates.update(
                        (bound.number - 1, bound.number, bound.number + 1)
                    )
                elif isinstance(bound, HexVal):
                    for number in (bound.number - 1, bound.number, bound.number + 1):
                        if number >= 0:
                            hex_candidates.add(format(number, "x"))

    taken = set(str_consts)
    taken.update(universe_ids(model))
    taken.update(to_str(v) for v in constants)
    taken.update(("n", "m", "y", ""))
    sentinel = "configured"
    while sentinel in taken:
        sentinel += "_x"

    entries: list[tuple[str, tuple[LiftedConst, ...]]] = []
    declared = {cfg.name: cfg for cfg in model.configs}
    for name in universe_ids(model):
        cfg = declared.get(name)
        if cfg is None:
            entries.append((name, (BOTTOM,)))
        elif cfg.type is ConfigType.BOOLEAN:
            entries.append((name, (TriVal(Tri.N), TriVal(Tri.Y))))
        elif cfg.type is ConfigType.TRISTATE:
            entries.append((name, (TriVal(Tri.N), TriVal(Tri.M), TriVal(Tri.Y))))
        elif cfg.type is ConfigType.INT:
            values: list[LiftedConst] = [StrVal("")]
            values.extend(IntVal(n) for n in sorted(int_candidates))
            entries.append((name, tuple(values)))
        elif cfg.type is ConfigType.HEX:
            values = [StrVal("")]
            values.extend(HexVal(d) for d in sorted(hex_candidates))
            entries.append((name, tuple(values)))
        else:
            values = [StrVal(""), StrVal(sentinel)]
            values.extend(StrVal(s) for s in str_consts)
            entries.append((name, tuple(values)))
    return ValueUniverse(tuple(entries))


def enumerate_configurations(
    model: KconfigModel,
    universe: ValueUniverse | None = None,
    cap: int | None = None,
    count_only: bool = False,
    backend: str | None = None,
):
    """All valid configurations over the universe, in canonical order.

    Refuses universes larger than ``cap`` assignments (default
    10**7).  With ``count_only`` the result is just the number of
    valid configurations.
    """

    from . import fastenum

    if universe is None:
        universe = build_value_universe(model)
    if cap is None:
        cap = DEFAULT_ENUMERATION_CAP
    total = universe.size
    if total > cap:
        raise EnumerationCapExceeded(total, cap)
    compiled = fastenum.compile_enumeration(model, universe)
    result = fastenum.run(compiled, count_only=count_only, backend=backend)
    if count_only:
        return result
    return [
        Configuration(dict(zip(compiled.names, values)))
        for values in result
    ]
