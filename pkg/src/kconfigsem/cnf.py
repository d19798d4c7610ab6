"""Clause-level transforms: CNF conversion, relaxation, DIMACS text.

Conversion uses plain distribution, no auxiliary variables, so the
variable set of the output is exactly the variable set of the input.
That property is what lets the soundness checker evaluate the CNF
under abstracted configurations.  A clause cap guards against the
exponential corner of distribution.

Each clause tracks whether any of its factors came from expanding an
equality-tagged biconditional; ``relax`` deletes exactly the tracked
clauses.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import KconfigModel, declared_ids
from .prop import (
    FALSE_K,
    PAnd,
    PFalse,
    PIff,
    PImplies,
    PNot,
    POr,
    PTrue,
    PVar,
    PropFormula,
    TRUE_K,
    pand,
    pnot,
    por,
    pvar,
)

DEFAULT_CLAUSE_CAP = 200_000

# A literal is (variable name, is-positive); a clause couples its
# literal set with the equality-origin mark.
Literal = tuple[str, bool]
Clause = tuple[frozenset[Literal], bool]


class ClauseBudgetExceeded(Exception):
    def __init__(self, cap: int) -> None:
        super().__init__(
            f"CNF conversion exceeded the cap of {cap} clauses; "
            "reduce the model or raise the cap"
        )
        self.cap = cap


def _cross(left: list[Clause], right: list[Clause], cap: int) -> list[Clause]:
    if len(left) * len(right) > cap:
        raise ClauseBudgetExceeded(cap)
    out = []
    for lits_a, mark_a in left:
        for lits_b, mark_b in right:
            out.append((lits_a | lits_b, mark_a or mark_b))
    return out


def _clauses(f: PropFormula, positive: bool, marked: bool, cap: int) -> list[Clause]:
    if isinstance(f, PVar):
        return [(frozenset(((f.name, positive),)), marked)]
    if isinstance(f, PTrue):
        return [] if positive else [(frozenset(), marked)]
    if isinstance(f, PFalse):
        return [(frozenset(), marked)] if positive else []
    if isinstance(f, PNot):
        return _clauses(f.operand, not positive, marked, cap)
    if isinstance(f, PAnd):
        if positive:
            out: list[Clause] = []
            for item in f.items:
                out.extend(_clauses(item, True, marked, cap))
                if len(out) > cap:
                    raise ClauseBudgetExceeded(cap)
            return out
        # Negated conjunction: disjunction of the negated items.
        acc = [(frozenset(), marked)]
        for item in f.items:
            acc = _cross(acc, _clauses(item, False, marked, cap), cap)
        return acc
    if isinstance(f, POr):
        if positive:
            acc = [(frozenset(), marked)]
            for item in f.items:
                acc = _cross(acc, _clauses(item, True, marked, cap), cap)
            return acc
        out = []
        for item in f.items:
            out.extend(_clauses(item, False, marked, cap))
            if len(out) > cap:
                raise ClauseBudgetExceeded(cap)
        return out
    if isinstance(f, PImplies):
        if positive:
            return _cross(
                _clauses(f.lhs, False, marked, cap),
                _clauses(f.rhs, True, marked, cap),
                cap,
            )
        return (
            _clauses(f.lhs, True, marked, cap)
            + _clauses(f.rhs, False, marked, cap)
        )
    if isinstance(f, PIff):
        inherit = marked or f.from_equality
        a, b = f.lhs, f.rhs
        if positive:
            halves = (PImplies(a, b), PImplies(b, a))
        else:
            halves = (POr((a, b)), POr((PNot(a), PNot(b))))
        out = []
        for half in halves:
            out.extend(_clauses(half, True, inherit, cap))
        return out
    raise TypeError(f"not a propositional formula: {f!r}")


def _is_tautology(lits: frozenset[Literal]) -> bool:
    return any((name, not pos) in lits for name, pos in lits)


def cnf_clauses(f: PropFormula, cap: int = DEFAULT_CLAUSE_CAP) -> list[Clause]:
    """Convert to CNF clauses, dropping tautologies and duplicates."""

    out: list[Clause] = []
    seen: set[frozenset[Literal]] = set()
    for lits, mark in _clauses(f, True, False, cap):
        if _is_tautology(lits) or lits in seen:
            continue
        seen.add(lits)
        out.append((lits, mark))
    return out


def _clause_formula(lits: frozenset[Literal]) -> PropFormula:
    parts = [
        pvar(name) if pos else pnot(pvar(name))
        for name, pos in sorted(lits)
    ]
    return por(*parts)


def relax(f: PropFormula, cap: int = DEFAULT_CLAUSE_CAP) -> PropFormula:
    """CNF-convert ``f`` and drop every equality-originated clause.

    Dropping clauses only ever weakens, so the result is implied by
    the input.  With nothing left the result is the true formula.
    """

    kept = [lits for lits, mark in cnf_clauses(f, cap) if not mark]
    if not kept:
        return TRUE_K
    if any(not lits for lits in kept):
        return FALSE_K
    return pand(*[_clause_formula(lits) for lits in kept])


def make_numbering(model: KconfigModel) -> dict[str, int]:
    """Number the declared configs 1..k in name order."""

    return {name: i for i, name in enumerate(sorted(declared_ids(model)), start=1)}


@dataclass(frozen=True)
class CnfDoc:
    numbering: dict[str, int]
    clauses: tuple[tuple[int, ...], ...]

    def render(self) -> str:
        lines = [
            f"c {name} {num}"
            for name, num in sorted(self.numbering.items(), key=lambda kv: kv[1])
        ]
        lines.append(f"p cnf {len(self.numbering)} {len(self.clauses)}")
        for clause in self.clauses:
            lines.append(" ".join(str(lit) for lit in clause) + " 0")
        return "\n".join(lines) + "\n"


def build_cnf_doc(
    f: PropFormula,
    numbering: dict[str, int],
    cap: int = DEFAULT_CLAUSE_CAP,
) -> CnfDoc:
    encoded = []
    for lits, _mark in cnf_clauses(f, cap):
        clause = tuple(
            sorted(
                (numbering[name] if pos else -numbering[name] for name, pos in lits),
                key=abs,
            )
        )
        encoded.append(clause)
    return CnfDoc(numbering=dict(numbering), clauses=tuple(encoded))


def emit_dimacs(
    f: PropFormula,
    numbering: dict[str, int],
    cap: int = DEFAULT_CLAUSE_CAP,
) -> str:
    return build_cnf_doc(f, numbering, cap).render()
