"""Propositional formulas over config identifiers.

One boolean variable per declared config.  Construction goes through
the lowercase helper functions, which fold constants and flatten
nested connectives so that downstream passes see small trees.

``PIff`` nodes carry a ``from_equality`` flag.  Biconditionals that
came from rewriting an equality comparison are tagged at creation;
the CNF relaxation pass uses the tag to delete exactly the clauses
such a biconditional expands into.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Union


@dataclass(frozen=True)
class PVar:
    name: str


@dataclass(frozen=True)
class PTrue:
    pass


@dataclass(frozen=True)
class PFalse:
    pass


@dataclass(frozen=True)
class PNot:
    operand: "PropFormula"


@dataclass(frozen=True)
class PAnd:
    items: tuple["PropFormula", ...]


@dataclass(frozen=True)
class POr:
    items: tuple["PropFormula", ...]


@dataclass(frozen=True)
class PImplies:
    lhs: "PropFormula"
    rhs: "PropFormula"


@dataclass(frozen=True)
class PIff:
    lhs: "PropFormula"
    rhs: "PropFormula"
    from_equality: bool = field(default=False, compare=False)


PropFormula = Union[PVar, PTrue, PFalse, PNot, PAnd, POr, PImplies, PIff]

TRUE_K = PTrue()
FALSE_K = PFalse()


def pvar(name: str) -> PVar:
    return PVar(name)


def pnot(f: PropFormula) -> PropFormula:
    if isinstance(f, PTrue):
        return FALSE_K
    if isinstance(f, PFalse):
        return TRUE_K
    if isinstance(f, PNot):
        return f.operand
    return PNot(f)


def pand(*parts: PropFormula) -> PropFormula:
    items: list[PropFormula] = []
    for part in parts:
        if isinstance(part, PTrue):
            continue
        if isinstance(part, PFalse):
            return FALSE_K
        if isinstance(part, PAnd):
            candidates = part.items
        else:
            candidates = (part,)
        for cand in candidates:
            if cand not in items:
                items.append(cand)
    if not items:
        return TRUE_K
    if len(items) == 1:
        return items[0]
    return PAnd(tuple(items))


def por(*parts: PropFormula) -> PropFormula:
    items: list[PropFormula] = []
    for part in parts:
        if isinstance(part, PFalse):
            continue
        if isinstance(part, PTrue):
            return TRUE_K
        if isinstance(part, POr):
            candidates = part.items
        else:
            candidates = (part,)
        for cand in candidates:
            if cand not in items:
                items.append(cand)
    if not items:
        return FALSE_K
    if len(items) == 1:
        return items[0]
    return POr(tuple(items))


def pimplies(lhs: PropFormula, rhs: PropFormula) -> PropFormula:
    if isinstance(lhs, PFalse) or isinstance(rhs, PTrue):
        return TRUE_K
    if isinstance(lhs, PTrue):
        return rhs
    if isinstance(rhs, PFalse):
        return pnot(lhs)
    if lhs == rhs:
        return TRUE_K
    return PImplies(lhs, rhs)


def piff(lhs: PropFormula, rhs: PropFormula, from_equality: bool = False) -> PropFormula:
    if lhs == rhs:
        return TRUE_K
    if isinstance(lhs, PTrue):
        return rhs
    if isinstance(rhs, PTrue):
        return lhs
    if isinstance(lhs, PFalse):
        return pnot(rhs)
    if isinstance(rhs, PFalse):
        return pnot(lhs)
    return PIff(lhs, rhs, from_equality)


def prop_variables(f: PropFormula) -> set[str]:
    """Collect the variable names occurring in ``f``."""

    out: set[str] = set()
    stack = [f]
    while stack:
        node = stack.pop()
        if isinstance(node, PVar):
            out.add(node.name)
        elif isinstance(node, PNot):
            stack.append(node.operand)
        elif isinstance(node, (PAnd, POr)):
            stack.extend(node.items)
        elif isinstance(node, (PImplies, PIff)):
            stack.append(node.lhs)
            stack.append(node.rhs)
    return out


def eval_prop(f: PropFormula, env: Mapping[str, bool]) -> bool:
    if isinstance(f, PVar):
        return env[f.name]
    if isinstance(f, PTrue):
        return True
    if isinstance(f, PFalse):
        return False
    if isinstance(f, PNot):
        return not eval_prop(f.operand, env)
    if isinstance(f, PAnd):
        return all(eval_prop(item, env) for item in f.items)
    if isinstance(f, POr):
        return any(eval_prop(item, env) for item in f.items)
    if isinstance(f, PImplies):
        return (not eval_prop(f.lhs, env)) or eval_prop(f.rhs, env)
    if isinstance(f, PIff):
        return eval_prop(f.lhs, env) == eval_prop(f.rhs, env)
    raise TypeError(f"not a propositional formula: {f!r}")
