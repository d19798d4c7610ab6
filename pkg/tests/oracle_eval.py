"""Independent table-driven evaluation oracle.

This module must stay decoupled from ``kconfigsem.evaluator``: it
shares only the expression *data* types and recomputes every result
from explicit lookup tables, so tests can cross-check the production
evaluator against a second implementation.
"""

from __future__ import annotations

from kconfigsem.expr import (
    BOTTOM,
    And,
    Eq,
    HexVal,
    IntVal,
    Leaf,
    Neq,
    Not,
    Or,
    StrVal,
    TriVal,
)

# Truth tables indexed by [left][right] over the ordered domain n, m, y.
OR_TABLE = (
    (0, 1, 2),
    (1, 1, 2),
    (2, 2, 2),
)
AND_TABLE = (
    (0, 0, 0),
    (0, 1, 1),
    (0, 1, 2),
)
NOT_TABLE = (2, 1, 0)
TRI_RENDER = ("n", "m", "y")


def oracle_render(item, assignment):
    """Render a leaf operand to its comparison string."""

    if isinstance(item, str):
        stored = assignment[item]
        if stored is BOTTOM:
            return item
        item = stored
    if isinstance(item, TriVal):
        return TRI_RENDER[int(item.value)]
    if isinstance(item, StrVal):
        return item.text
    if isinstance(item, HexVal):
        return "0x" + item.digits
    if isinstance(item, IntVal):
        return "%d" % item.number
    raise TypeError(item)


def _leaf_value(item, assignment):
    if isinstance(item, str):
        stored = assignment[item]
        return int(stored.value) if isinstance(stored, TriVal) else 0
    if isinstance(item, TriVal):
        return int(item.value)
    return 0


def oracle_eval(e, assignment):
    """Evaluate an expression to 0, 1, or 2 using only lookup tables."""

    if isinstance(e, Leaf):
        return _leaf_value(e.item, assignment)
    if isinstance(e, Not):
        return NOT_TABLE[oracle_eval(e.operand, assignment)]
    if isinstance(e, And):
        return AND_TABLE[oracle_eval(e.left, assignment)][oracle_eval(e.right, assignment)]
    if isinstance(e, Or):
        return OR_TABLE[oracle_eval(e.left, assignment)][oracle_eval(e.right, assignment)]
    if isinstance(e, Eq):
        same = oracle_render(e.left, assignment) == oracle_render(e.right, assignment)
        return 2 if same else 0
    if isinstance(e, Neq):
        same = oracle_render(e.left, assignment) == oracle_render(e.right, assignment)
        return 0 if same else 2
    raise TypeError(e)


def all_exprs_depth2(leaf_items):
    """Every expression of depth at most 2 over the given leaf operands.

    Depth 0 trees are bare leaves, comparisons count as depth 1, and
    each connective adds one level.  The closure is deduplicated.
    """

    depth0 = [Leaf(item) for item in leaf_items]
    comparisons = [Eq(a, b) for a in leaf_items for b in leaf_items]
    comparisons += [Neq(a, b) for a in leaf_items for b in leaf_items]

    def grow(pool):
        grown = [Not(e) for e in pool]
        grown += [And(a, b) for a in pool for b in pool]
        grown += [Or(a, b) for a in pool for b in pool]
        return grown

    depth1 = comparisons + grow(depth0)
    upto1 = depth0 + depth1
    depth2 = grow(upto1)
    seen = []
    known = set()
    for e in upto1 + depth2:
        if e not in known:
            known.add(e)
            seen.append(e)
    return seen
