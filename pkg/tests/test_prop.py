"""Formula nodes and their folding constructors."""

from __future__ import annotations

import pytest

from kconfigsem.prop import (
    FALSE_K,
    PAnd,
    PIff,
    PImplies,
    PNot,
    POr,
    PVar,
    TRUE_K,
    eval_prop,
    pand,
    piff,
    pimplies,
    pnot,
    por,
    prop_variables,
    pvar,
)

A = pvar("A")
B = pvar("B")
C = pvar("C")


class TestConstructors:
    def test_not_folds_constants_and_involution(self):
        assert pnot(TRUE_K) == FALSE_K
        assert pnot(FALSE_K) == TRUE_K
        assert pnot(pnot(A)) == A
        assert pnot(A) == PNot(A)

    def test_and_flattens_and_dedupes(self):
        assert pand() == TRUE_K
        assert pand(A) == A
        assert pand(A, TRUE_K, B) == PAnd((A, B))
        assert pand(A, FALSE_K, B) == FALSE_K
        assert pand(pand(A, B), C) == PAnd((A, B, C))
        assert pand(A, A) == A

    def test_or_flattens_and_dedupes(self):
        assert por() == FALSE_K
        assert por(A, FALSE_K) == A
        assert por(A, TRUE_K) == TRUE_K
        assert por(por(A, B), B, C) == POr((A, B, C))

    def test_implies_folds(self):
        assert pimplies(FALSE_K, A) == TRUE_K
        assert pimplies(A, TRUE_K) == TRUE_K
        assert pimplies(TRUE_K, A) == A
        assert pimplies(A, FALSE_K) == PNot(A)
        assert pimplies(A, A) == TRUE_K
        assert pimplies(A, B) == PImplies(A, B)

    def test_iff_folds(self):
        assert piff(A, A) == TRUE_K
        assert piff(TRUE_K, A) == A
        assert piff(A, FALSE_K) == PNot(A)
        node = piff(A, B, from_equality=True)
        assert isinstance(node, PIff)
        assert node.from_equality

    def test_variables_collection(self):
        f = pand(pimplies(A, B), piff(B, C, from_equality=True))
        assert prop_variables(f) == {"A", "B", "C"}
        assert prop_variables(TRUE_K) == set()


class TestEval:
    def test_connectives(self):
        env = {"A": True, "B": False}
        assert eval_prop(A, env)
        assert not eval_prop(pvar("B"), env)
        assert eval_prop(TRUE_K, env)
        assert not eval_prop(FALSE_K, env)
        assert eval_prop(pnot(pvar("B")), env)
        assert not eval_prop(pand(A, pvar("B")), env)
        assert eval_prop(por(A, pvar("B")), env)
        assert not eval_prop(pimplies(A, pvar("B")), env)
        assert not eval_prop(piff(A, pvar("B")), env)
        assert eval_prop(piff(A, A), env)

    def test_unknown_variable_raises(self):
        with pytest.raises(KeyError):
            eval_prop(pvar("MISSING"), {})
