"""Model declarations: configs, choices, and well-formedness checks.

A model is a set of config declarations plus a set of choice groups.
Both are stored canonically ordered (configs by name, choices by a
structural key) so that equality behaves like set equality and every
downstream traversal is deterministic.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, Union

from .expr import (
    EXPR_N,
    HexVal,
    IntVal,
    KExpr,
    Leaf,
    StrVal,
    TriVal,
    expr_identifiers,
    expr_sort_key,
    _leaf_key,
)

# The distinguished config name that gates module (value m) support.
MODULES_NAME = "MODULES"

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")

# Single lowercase letters n/m/y are tristate literals in the text
# format, so they cannot double as identifiers.
_RESERVED = {"n", "m", "y"}


def is_valid_identifier(name: str) -> bool:
    return bool(_IDENT_RE.match(name)) and name not in _RESERVED


class ConfigType(str, enum.Enum):
    BOOLEAN = "boolean"
    TRISTATE = "tristate"
    INT = "int"
    HEX = "hex"
    STRING = "string"

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        return self.value


# Types whose values live in the tristate lattice versus the ones that
# hold user-entered text/number payloads.
TRI_TYPES = frozenset({ConfigType.BOOLEAN, ConfigType.TRISTATE})
ENTRY_TYPES = frozenset({ConfigType.INT, ConfigType.HEX, ConfigType.STRING})
NUMERIC_TYPES = frozenset({ConfigType.INT, ConfigType.HEX})


@dataclass(frozen=True)
class DefaultEntry:
    """One ``default <value> if <condition>`` entry; order matters."""

    value: KExpr
    condition: KExpr


RangeBound = Union[str, HexVal, IntVal]


@dataclass(frozen=True)
class RangeEntry:
    """A conditional numeric range; bounds are identifiers or numbers."""

    lower: RangeBound
    upper: RangeBound
    condition: KExpr

    def __post_init__(self) -> None:
        for bound in (self.lower, self.upper):
            if isinstance(bound, (TriVal, StrVal)):
                raise TypeError(f"range bound cannot be {bound!r}")
            if not isinstance(bound, (str, HexVal, IntVal)):
                raise TypeError(f"range bound must be identifier or number, got {bound!r}")


def _range_key(r: RangeEntry) -> tuple:
    return (_leaf_key(r.lower), _leaf_key(r.upper), expr_sort_key(r.condition))


@dataclass(frozen=True)
class ConfigDecl:
    """Declaration of one config entry.

    ``prompt`` gates user visibility, ``defaults`` apply in order when
    the config is not visible, ``reverse_dep`` is the accumulated
    select expression forcing a lower bound, and ``ranges`` constrain
    numeric types.
    """

    name: str
    type: ConfigType
    prompt: KExpr = EXPR_N
    defaults: tuple[DefaultEntry, ...] = ()
    reverse_dep: KExpr = EXPR_N
    ranges: tuple[RangeEntry, ...] = ()

    def __post_init__(self) -> None:
        if not is_valid_identifier(self.name):
            raise ValueError(f"invalid config name: {self.name!r}")
        if not isinstance(self.type, ConfigType):
            object.__setattr__(self, "type", ConfigType(self.type))
        object.__setattr__(self, "defaults", tuple(self.defaults))
        ranges = tuple(dict.fromkeys(self.ranges))
        object.__setattr__(self, "ranges", tuple(sorted(ranges, key=_range_key)))
        if self.type in ENTRY_TYPES:
            for entry in self.defaults:
                if not isinstance(entry.value, Leaf):
                    raise ValueError(
                        f"config {self.name}: default value for {self.type.value} "
                        f"config must be a single identifier or constant"
                    )


@dataclass(frozen=True)
class ChoiceDecl:
    """A choice group over declared configs.

    Only boolean and tristate choices exist.  A mandatory choice must
    have an active member whenever its prompt condition holds.
    """

    type: ConfigType
    mandatory: bool
    prompt: KExpr
    members: tuple[str, ...]

    def __post_init__(self) -> None:
        if self.type not in TRI_TYPES:
            raise ValueError(f"choice type must be boolean or tristate, got {self.type!r}")
        members = tuple(sorted(dict.fromkeys(self.members)))
        for member in members:
            if not is_valid_identifier(member):
                raise ValueError(f"invalid choice member name: {member!r}")
        object.__setattr__(self, "members", members)


def _choice_key(ch: ChoiceDecl) -> tuple:
    return (ch.type.value, ch.mandatory, expr_sort_key(ch.prompt), ch.members)


def _config_expressions(cfg: ConfigDecl) -> Iterable[KExpr]:
    yield cfg.prompt
    yield cfg.reverse_dep
    for entry in cfg.defaults:
        yield entry.value
        yield entry.condition
    for rng in cfg.ranges:
        yield rng.condition


@dataclass(frozen=True)
class KconfigModel:
    configs: tuple[ConfigDecl, ...] = ()
    choices: tuple[ChoiceDecl, ...] = ()

    def __post_init__(self) -> None:
        configs = tuple(sorted(self.configs, key=lambda c: c.name))
        names = [c.name for c in configs]
        dupes = {n for n in names if names.count(n) > 1}
        if dupes:
            raise ValueError(f"duplicate config declarations: {', '.join(sorted(dupes))}")
        object.__setattr__(self, "configs", configs)
        choices = tuple(dict.fromkeys(self.choices))
        object.__setattr__(self, "choices", tuple(sorted(choices, key=_choice_key)))
        for cfg in configs:
            for e in _config_expressions(cfg):
                self._check_expression_names(e, f"config {cfg.name}")
            for rng in cfg.ranges:
                for bound in (rng.lower, rng.upper):
                    if isinstance(bound, str) and not is_valid_identifier(bound):
                        raise ValueError(f"config {cfg.name}: invalid identifier {bound!r}")
        for ch in self.choices:
            self._check_expression_names(ch.prompt, "choice")

    @staticmethod
    def _check_expression_names(e: KExpr, where: str) -> None:
        for name in expr_identifiers(e):
            if not is_valid_identifier(name):
                raise ValueError(f"{where}: invalid identifier {name!r} in expression")

    def config(self, name: str) -> ConfigDecl:
        for cfg in self.configs:
            if cfg.name == name:
                return cfg
        raise KeyError(name)

    def declares(self, name: str) -> bool:
        return any(cfg.name == name for cfg in self.configs)


def declared_ids(model: KconfigModel) -> frozenset[str]:
    return frozenset(cfg.name for cfg in model.configs)


def referenced_ids(model: KconfigModel) -> frozenset[str]:
    """Identifiers mentioned anywhere outside their own declaration.

    Covers every expression position, range bounds, and choice member
    lists, so that a configuration assigning all universe identifiers
    is total for every lookup the semantics can perform.
    """

    names: set[str] = set()
    for cfg in model.configs:
        for e in _config_expressions(cfg):
            names.update(expr_identifiers(e))
        for rng in cfg.ranges:
            if isinstance(rng.lower, str):
                names.add(rng.lower)
            if isinstance(rng.upper, str):
                names.add(rng.upper)
    for ch in model.choices:
        names.update(expr_identifiers(ch.prompt))
        names.update(ch.members)
    return frozenset(names)


def universe_ids(model: KconfigModel) -> tuple[str, ...]:
    """All identifiers a configuration must assign, sorted."""

    return tuple(sorted(declared_ids(model) | referenced_ids(model)))


def undeclared_ids(model: KconfigModel) -> frozenset[str]:
    return referenced_ids(model) - declared_ids(model)


@dataclass(frozen=True)
class Violation:
    """One well-formedness violation, identified by a stable rule id."""

    rule: str
    subject: str
    message: str


def check_well_formed(model: KconfigModel) -> list[Violation]:
    """Check the structural rules a model must satisfy.

    W1: int/hex/string configs must carry the literal select
        expression ``n`` (checked syntactically, not by evaluation).
    W2: only int and hex configs may declare ranges.
    W3: every choice member must be a declared config.
    """

    violations: list[Violation] = []
    declared = declared_ids(model)
    for cfg in model.configs:
        if cfg.type in ENTRY_TYPES and cfg.reverse_dep != EXPR_N:
            violations.append(
                Violation(
                    "W1",
                    cfg.name,
                    f"{cfg.type.value} config must keep select expression n",
                )
            )
        if cfg.type not in NUMERIC_TYPES and cfg.ranges:
            violations.append(
                Violation(
                    "W2",
                    cfg.name,
                    f"ranges are only allowed on int and hex configs, not {cfg.type.value}",
                )
            )
    for index, ch in enumerate(model.choices):
        for member in ch.members:
            if member not in declared:
                violations.append(
                    Violation(
                        "W3",
                        f"choice[{index}]",
                        f"choice member {member} is not a declared config",
                    )
                )
    return violations
