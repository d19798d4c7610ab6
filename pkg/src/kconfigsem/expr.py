"""Core value and expression types for the configuration language.

Values
    A constant is one of four disjoint kinds: a tristate (``n`` < ``m``
    < ``y``), a string, a hexadecimal literal (digits stored without
    the ``0x`` prefix, case preserved), or a decimal integer.  On top
    of the constants sits :data:`BOTTOM`, the "undefined" value carried
    by identifiers that are referenced but never declared.

Expressions
    Expression trees use the connectives ``&&``, ``||`` and ``!`` plus
    the comparisons ``=`` and ``!=``.  Comparison operands are *leaves*
    (an identifier or a constant), never nested expressions; the node
    constructors enforce this shape.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, Union


class Tri(enum.IntEnum):
    """Tristate values, totally ordered as N < M < Y."""

    N = 0
    M = 1
    Y = 2


@dataclass(frozen=True)
class TriVal:
    value: Tri

    def __post_init__(self) -> None:
        if not isinstance(self.value, Tri):
            object.__setattr__(self, "value", Tri(self.value))


@dataclass(frozen=True)
class StrVal:
    text: str

    def __post_init__(self) -> None:
        if not isinstance(self.text, str):
            raise TypeError(f"string value must wrap str, got {self.text!r}")


@dataclass(frozen=True)
class HexVal:
    """Hexadecimal constant; ``digits`` excludes the 0x prefix.

    Digit case is preserved: ``HexVal("1A")`` and ``HexVal("1a")`` are
    distinct values that render as ``0x1A`` and ``0x1a``.
    """

    digits: str

    def __post_init__(self) -> None:
        if not self.digits or any(c not in "0123456789abcdefABCDEF" for c in self.digits):
            raise ValueError(f"invalid hex digits: {self.digits!r}")

    @property
    def number(self) -> int:
        return int(self.digits, 16)


@dataclass(frozen=True)
class IntVal:
    number: int

    def __post_init__(self) -> None:
        if not isinstance(self.number, int) or isinstance(self.number, bool):
            raise TypeError(f"integer value must wrap int, got {self.number!r}")


Const = Union[TriVal, StrVal, HexVal, IntVal]


class _BottomType:
    """Singleton placeholder for undeclared-identifier values."""

    _instance: "_BottomType | None" = None

    def __new__(cls) -> "_BottomType":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "BOTTOM"


BOTTOM = _BottomType()

LiftedConst = Union[Const, _BottomType]

# Convenience constants: the three tristate literals.
N = TriVal(Tri.N)
M = TriVal(Tri.M)
Y = TriVal(Tri.Y)

# A leaf operand is an identifier (bare string) or a constant.
IdOrConst = Union[str, Const]


def is_const(item: object) -> bool:
    return isinstance(item, (TriVal, StrVal, HexVal, IntVal))


def _check_leaf_operand(item: object, where: str) -> None:
    if not isinstance(item, str) and not is_const(item):
        raise TypeError(f"{where} must be an identifier or constant, got {item!r}")


@dataclass(frozen=True)
class Leaf:
    """A bare identifier or constant used as an expression."""

    item: IdOrConst

    def __post_init__(self) -> None:
        _check_leaf_operand(self.item, "leaf")


@dataclass(frozen=True)
class Not:
    operand: "KExpr"


@dataclass(frozen=True)
class And:
    left: "KExpr"
    right: "KExpr"


@dataclass(frozen=True)
class Or:
    left: "KExpr"
    right: "KExpr"


@dataclass(frozen=True)
class Eq:
    """Equality comparison; operands are leaves, not sub-expressions."""

    left: IdOrConst
    right: IdOrConst

    def __post_init__(self) -> None:
        _check_leaf_operand(self.left, "comparison operand")
        _check_leaf_operand(self.right, "comparison operand")


@dataclass(frozen=True)
class Neq:
    left: IdOrConst
    right: IdOrConst

    def __post_init__(self) -> None:
        _check_leaf_operand(self.left, "comparison operand")
        _check_leaf_operand(self.right, "comparison operand")


KExpr = Union[Leaf, Not, And, Or, Eq, Neq]

# Frequently used literal expressions.
EXPR_N = Leaf(N)
EXPR_M = Leaf(M)
EXPR_Y = Leaf(Y)


def expr_identifiers(e: KExpr) -> Iterator[str]:
    """Yield every identifier occurring in ``e`` (with repeats)."""

    stack: list[KExpr] = [e]
    while stack:
        node = stack.pop()
        if isinstance(node, Leaf):
            if isinstance(node.item, str):
                yield node.item
        elif isinstance(node, Not):
            stack.append(node.operand)
        elif isinstance(node, (And, Or)):
            stack.append(node.right)
            stack.append(node.left)
        elif isinstance(node, (Eq, Neq)):
            if isinstance(node.left, str):
                yield node.left
            if isinstance(node.right, str):
                yield node.right
        else:  # pragma: no cover - union is closed
            raise TypeError(f"not an expression node: {node!r}")


def _leaf_key(item: IdOrConst) -> tuple:
    if isinstance(item, str):
        return (0, item)
    if isinstance(item, TriVal):
        return (1, int(item.value))
    if isinstance(item, StrVal):
        return (2, item.text)
    if isinstance(item, HexVal):
        return (3, item.digits)
    return (4, item.number)


def expr_sort_key(e: KExpr) -> tuple:
    """A structural ordering key; used only to canonicalize model layout."""

    if isinstance(e, Leaf):
        return (0, _leaf_key(e.item))
    if isinstance(e, Not):
        return (1, expr_sort_key(e.operand))
    if isinstance(e, And):
        return (2, expr_sort_key(e.left), expr_sort_key(e.right))
    if isinstance(e, Or):
        return (3, expr_sort_key(e.left), expr_sort_key(e.right))
    if isinstance(e, Eq):
        return (4, _leaf_key(e.left), _leaf_key(e.right))
    return (5, _leaf_key(e.left), _leaf_key(e.right))
