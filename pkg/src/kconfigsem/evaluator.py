"""Expression evaluation over total configurations.

A configuration maps every identifier of a model's universe (declared
and merely referenced names alike) to a constant, or to
:data:`~kconfigsem.expr.BOTTOM` for names that no declaration backs.
Evaluation is three-valued: connectives are min/max/complement on the
tristate lattice, and comparisons go through the canonical string
rendering of their operands, yielding only ``y`` or ``n``.
"""

from __future__ import annotations

from typing import Iterator, Mapping

from .expr import (
    BOTTOM,
    And,
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
    is_const,
)


class Configuration(Mapping[str, LiftedConst]):
    """An immutable total assignment of identifiers to lifted constants."""

    __slots__ = ("_entries", "_hash")

    def __init__(self, entries: Mapping[str, LiftedConst]):
        self._entries = dict(entries)
        self._hash: int | None = None

    def __getitem__(self, name: str) -> LiftedConst:
        return self._entries[name]

    def __iter__(self) -> Iterator[str]:
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def value(self, name: str) -> LiftedConst:
        """Like indexing, but names outside the universe read as bottom."""

        return self._entries.get(name, BOTTOM)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Configuration):
            return self._entries == other._entries
        if isinstance(other, Mapping):
            return self._entries == dict(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(
                (k, _hashable(v)) for k, v in self._entries.items()
            ))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"{k}={v!r}" for k, v in sorted(self._entries.items()))
        return f"Configuration({body})"


def _hashable(v: LiftedConst) -> object:
    # Plain strings never collide with the constant wrappers, so any
    # marker works here; it only has to be stable and hashable.
    return "<bottom>" if v is BOTTOM else v


class EvaluationDomainError(Exception):
    """An expression referenced an identifier outside the configuration."""


def bool_interp(v: Tri | TriVal) -> bool:
    """Truthiness of a tristate: only ``n`` is false."""

    value = v.value if isinstance(v, TriVal) else v
    return value != Tri.N


def access(item: IdOrConst, c: Configuration) -> Const:
    """Resolve a leaf operand to a constant.

    Constants resolve to themselves.  Identifiers resolve to their
    assigned value, except that a bottom-valued identifier resolves to
    its own name as a string.
    """

    if is_const(item):
        return item  # type: ignore[return-value]
    try:
        v = c[item]  # type: ignore[index]
    except KeyError as exc:
        raise EvaluationDomainError(
            f"identifier {item!r} is outside the configuration domain"
        ) from exc
    if v is BOTTOM:
        return StrVal(item)  # type: ignore[arg-type]
    return v  # type: ignore[return-value]


def to_str(v: Const) -> str:
    """Canonical rendering used by comparison semantics."""

    if isinstance(v, TriVal):
        return ("n", "m", "y")[v.value]
    if isinstance(v, StrVal):
        return v.text
    if isinstance(v, HexVal):
        return "0x" + v.digits
    if isinstance(v, IntVal):
        return str(v.number)
    raise TypeError(f"not a constant: {v!r}")


def _leaf_tri(item: IdOrConst, c: Configuration) -> Tri:
    v = access(item, c)
    return v.value if isinstance(v, TriVal) else Tri.N


def eval_expr(e: KExpr, c: Configuration) -> Tri:
    """Evaluate an expression to a tristate.

    Comparisons compare rendered strings and return only ``y`` or
    ``n``; leaves of non-tristate value evaluate to ``n``.
    """

    if isinstance(e, Leaf):
        return _leaf_tri(e.item, c)
    if isinstance(e, Not):
        return Tri(2 - eval_expr(e.operand, c))
    if isinstance(e, And):
        return min(eval_expr(e.left, c), eval_expr(e.right, c))
    if isinstance(e, Or):
        return max(eval_expr(e.left, c), eval_expr(e.right, c))
    if isinstance(e, Eq):
        same = to_str(access(e.left, c)) == to_str(access(e.right, c))
        return Tri.Y if same else Tri.N
    if isinstance(e, Neq):
        same = to_str(access(e.left, c)) == to_str(access(e.right, c))
        return Tri.N if same else Tri.Y
    raise TypeError(f"not an expression node: {e!r}")


def eval_lifted(v: LiftedConst) -> Tri:
    """Evaluate a stored value the way a leaf mentioning it would.

    Tristate values are themselves; strings, numbers, and bottom all
    evaluate to ``n``.
    """

    return v.value if isinstance(v, TriVal) else Tri.N
