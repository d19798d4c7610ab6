"""Acceptance gate: one test per release criterion.

Run with ``pytest tests/test_acceptance.py -v`` to get one pass/fail
line per criterion.  Each test states its expected behavior directly
and computes expectations through independent oracles (truth tables,
brute-force filtering, a standalone DPLL procedure) rather than
through the code under test.
"""

from __future__ import annotations

import subprocess
import sys
import time
from itertools import islice, product
from pathlib import Path

from dpll import dpll_satisfiable, parse_dimacs
from genmodels import generate_model
from oracle_eval import all_exprs_depth2, oracle_eval

from kconfigsem.abstraction import abstract_configuration, build_formula
from kconfigsem.cnf import build_cnf_doc, emit_dimacs, make_numbering
from kconfigsem.evaluator import Configuration, eval_expr
from kconfigsem.expr import M, N, TriVal, Y
from kconfigsem.model import ConfigType, check_well_formed, declared_ids
from kconfigsem.modelio import (
    parse_config,
    parse_config_line,
    parse_model,
    serialize_config,
    serialize_config_line,
    serialize_model,
)
from kconfigsem.prop import eval_prop
from kconfigsem.semantics import (
    build_value_universe,
    enumerate_configurations,
    validate,
)
from kconfigsem.soundness import check_soundness

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def load_fixture(name: str):
    return parse_model((FIXTURES / name).read_text())


def test_criterion_01_eval_matches_truth_table_oracle():
    started = time.monotonic()
    exprs = all_exprs_depth2(["P", "Q", N, M, Y])
    assignments = [
        Configuration({"P": p, "Q": q})
        for p in (N, M, Y)
        for q in (N, M, Y)
    ]
    assert len(assignments) == 9
    for e in exprs:
        for c in assignments:
            assert eval_expr(e, c) == oracle_eval(e, c), (e, dict(c))
    assert time.monotonic() - started < 5.0


def test_criterion_02_enumeration_equals_validation_filter():
    for seed in range(24):
        model = generate_model(seed)
        universe = build_value_universe(model)
        assert universe.size <= 4096
        enumerated = enumerate_configurations(model, universe)
        filtered = [
            c for c in universe.iter_assignments() if validate(model, c).valid
        ]
        assert len(enumerated) == len(filtered), seed
        assert set(enumerated) == set(filtered), seed


def test_criterion_03_wf_rules_reject_and_accept_exactly():
    broken_select = check_well_formed(load_fixture("wf_w1_select_on_int.kmodel"))
    assert [v.rule for v in broken_select] == ["W1"]

    broken_range = check_well_formed(load_fixture("wf_w2_range_on_string.kmodel"))
    assert [v.rule for v in broken_range] == ["W2"]

    assert check_well_formed(load_fixture("wf_w1_fixed.kmodel")) == []
    assert check_well_formed(load_fixture("wf_w2_fixed.kmodel")) == []


def test_criterion_04_modules_off_bans_m_everywhere():
    fixtures_with_modules = 0
    for path in sorted(FIXTURES.glob("*.kmodel")):
        model = parse_model(path.read_text())
        if "MODULES" not in declared_ids(model):
            continue
        fixtures_with_modules += 1
        for c in enumerate_configurations(model):
            if c["MODULES"] == N:
                offenders = [
                    name
                    for name, value in c.items()
                    if isinstance(value, TriVal) and value == M
                ]
                assert offenders == [], (path.name, serialize_config_line(c))
    assert fixtures_with_modules >= 2


def test_criterion_05_mandatory_boolean_choice_picks_one_member():
    model = load_fixture("choice_bool_mandatory.kmodel")
    members = ("APPLE", "BANANA", "CHERRY")
    valid = enumerate_configurations(model)
    assert len(valid) == 3
    chosen = set()
    for c in valid:
        winners = [name for name in members if c[name] == Y]
        losers = [name for name in members if c[name] == N]
        assert len(winners) == 1 and len(losers) == 2, serialize_config_line(c)
        chosen.add(winners[0])
    assert chosen == set(members)


def test_criterion_06_invisible_default_forces_module_value():
    model = load_fixture("modules_forced.kmodel")
    universe = build_value_universe(model)
    valid = enumerate_configurations(model, universe)
    pinned = [
        c
        for c in universe.iter_assignments()
        if c["FOO"] == M and c["MODULES"] == Y
    ]
    assert set(valid) == set(pinned)
    assert valid == [Configuration({"FOO": M, "MODULES": Y})]


def test_criterion_07_boolean_models_abstract_soundly():
    for seed in range(20):
        model = generate_model(seed, boolean_only=True)
        assert all(cfg.type is ConfigType.BOOLEAN for cfg in model.configs)
        assert not model.choices
        formula = build_formula(model)
        for c in enumerate_configurations(model):
            env = abstract_configuration(model, c)
            assert eval_prop(formula, env), (seed, serialize_config_line(c))
        assert check_soundness(model).violations == ()


def test_criterion_08_tristate_choice_gap_is_reported():
    report = check_soundness(load_fixture("choice_tristate_gap.kmodel"))
    assert len(report.violations) >= 1
    assert Configuration({"ALPHA": M, "BETA": M}) in report.violations
    assert "VIOLATION ALPHA=m BETA=m" in report.lines()


def test_criterion_09_dimacs_deterministic_and_dpll_agrees():
    for path in sorted(FIXTURES.glob("*.kmodel")):
        text = path.read_text()
        emitted = []
        for _ in range(2):
            model = parse_model(text)
            emitted.append(emit_dimacs(build_formula(model), make_numbering(model)))
        assert emitted[0] == emitted[1], path.name

        model = parse_model(text)
        names = sorted(declared_ids(model))
        numbering = make_numbering(model)
        for exactly_one in (False, True):
            formula = build_formula(model, exactly_one=exactly_one)
            _, clauses = parse_dimacs(emit_dimacs(formula, numbering))
            solver_says = dpll_satisfiable(clauses)
            if len(names) <= 12:
                brute_says = any(
                    eval_prop(formula, dict(zip(names, bits)))
                    for bits in product((False, True), repeat=len(names))
                )
                assert solver_says == brute_says, (path.name, exactly_one)


def test_criterion_09b_dimacs_stable_across_processes(tmp_path):
    outputs = []
    for hash_seed, name in (("0", "one.cnf"), ("4242", "two.cnf")):
        out = tmp_path / name
        code = subprocess.run(
            [
                sys.executable,
                "-c",
                "from kconfigsem.cli import main; raise SystemExit(main("
                f"['prop-export', '--model', {str(FIXTURES / 'select_chain.kmodel')!r},"
                f" '--out', {str(out)!r}]))",
            ],
            env={"PYTHONHASHSEED": hash_seed, "PATH": "/usr/bin:/bin"},
        ).returncode
        assert code == 0
        outputs.append(out.read_bytes())
    assert outputs[0] == outputs[1]


def test_criterion_10_parse_serialize_identity():
    for seed in range(30):
        model = generate_model(seed)
        assert parse_model(serialize_model(model)) == model
    for seed in range(10):
        model = generate_model(seed, boolean_only=True)
        assert parse_model(serialize_model(model)) == model

    for seed in range(12):
        model = generate_model(seed)
        universe = build_value_universe(model)
        for c in islice(universe.iter_assignments(), 25):
            assert parse_config(serialize_config(c), model) == c
            assert parse_config_line(serialize_config_line(c)) == c
