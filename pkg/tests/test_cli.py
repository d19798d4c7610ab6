"""Command-line behavior: output, exit codes, cap handling."""

from __future__ import annotations

import os
from pathlib import Path

import pytest

from kconfigsem.cli import main

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def fixture(name: str) -> str:
    return str(FIXTURES / name)


def run(capsys, *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture(autouse=True)
def clean_cap_env(monkeypatch):
    monkeypatch.delenv("KCONFIG_SEM_CAP", raising=False)


class TestWfCheck:
    def test_clean_model(self, capsys):
        code, out, err = run(
            capsys, "wf-check", "--model", fixture("simple_boolean.kmodel")
        )
        assert (code, out, err) == (0, "", "")

    def test_select_on_int(self, capsys):
        code, out, _ = run(
            capsys,
            "wf-check",
            "--model",
            fixture("wf_w1_select_on_int.kmodel"),
        )
        assert code == 1
        assert out == "W1 COUNT: int config must keep select expression n\n"

    def test_range_on_string(self, capsys):
        code, out, _ = run(
            capsys,
            "wf-check",
            "--model",
            fixture("wf_w2_range_on_string.kmodel"),
            "--porcelain",
        )
        assert code == 1
        assert out.startswith("violation\tW2\tNAME\t")

    def test_fixed_models_pass(self, capsys):
        for name in ("wf_w1_fixed.kmodel", "wf_w2_fixed.kmodel"):
            code, out, _ = run(capsys, "wf-check", "--model", fixture(name))
            assert (code, out) == (0, "")

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "wf-check", "--model", "no-such-file")
        assert code == 2
        assert "cannot read no-such-file" in err

    def test_parse_error(self, capsys, tmp_path):
        bad = tmp_path / "bad.kmodel"
        bad.write_text("config 9FOO boolean\n")
        code, _, err = run(capsys, "wf-check", "--model", str(bad))
        assert code == 2
        assert "line 1" in err


class TestValidate:
    def test_valid_configuration(self, capsys):
        code, out, _ = run(
            capsys,
            "validate",
            "--model",
            fixture("simple_boolean.kmodel"),
            "--config",
            fixture("simple_boolean_valid.kconf"),
        )
        assert (code, out) == (0, "valid\n")

    def test_invalid_configuration(self, capsys):
        code, out, _ = run(
            capsys,
            "validate",
            "--model",
            fixture("simple_boolean.kmodel"),
            "--config",
            fixture("simple_boolean_invalid.kconf"),
        )
        assert code == 1
        assert out == "invalid\n"

    def test_explain_names_the_failing_check(self, capsys):
        code, out, _ = run(
            capsys,
            "validate",
            "--model",
            fixture("simple_boolean.kmodel"),
            "--config",
            fixture("simple_boolean_invalid.kconf"),
            "--explain",
        )
        assert code == 1
        lines = out.splitlines()
        assert lines[0] == "invalid"
        assert lines[1].startswith("type FOO:")

    def test_porcelain_result(self, capsys):
        code, out, _ = run(
            capsys,
            "validate",
            "--model",
            fixture("simple_boolean.kmodel"),
            "--config",
            fixture("simple_boolean_valid.kconf"),
            "--porcelain",
        )
        assert (code, out) == (0, "result\tvalid\n")

    def test_incomplete_config_is_a_usage_error(self, capsys, tmp_path):
        empty = tmp_path / "empty.kconf"
        empty.write_text("")
        code, _, err = run(
            capsys,
            "validate",
            "--model",
            fixture("simple_boolean.kmodel"),
            "--config",
            str(empty),
        )
        assert code == 2
        assert "missing assignment for FOO" in err

    def test_wf_gate_runs_first(self, capsys, tmp_path):
        conf = tmp_path / "c.kconf"
        conf.write_text("BAR=y\nCOUNT=0\n")
        code, out, _ = run(
            capsys,
            "validate",
            "--model",
            fixture("wf_w1_select_on_int.kmodel"),
            "--config",
            str(conf),
        )
        assert code == 1
        assert out.startswith("W1 COUNT:")


class TestEnumerate:
    def test_lists_configurations_in_order(self, capsys):
        code, out, _ = run(
            capsys, "enumerate", "--model", fixture("simple_boolean.kmodel")
        )
        assert code == 0
        assert out == "FOO=n\nFOO=y\n"

    def test_count_only(self, capsys):
        code, out, _ = run(
            capsys,
            "enumerate",
            "--model",
            fixture("choice_bool_mandatory.kmodel"),
            "--count-only",
        )
        assert (code, out) == (0, "3\n")

    def test_porcelain_lines(self, capsys):
        code, out, _ = run(
            capsys,
            "enumerate",
            "--model",
            fixture("simple_boolean.kmodel"),
            "--porcelain",
        )
        assert out == "config\tFOO=n\nconfig\tFOO=y\n"
        code, out, _ = run(
            capsys,
            "enumerate",
            "--model",
            fixture("simple_boolean.kmodel"),
            "--porcelain",
            "--count-only",
        )
        assert out == "count\t2\n"

    def test_cap_exceeded(self, capsys):
        code, _, err = run(
            capsys,
            "enumerate",
            "--model",
            fixture("modules_tristate.kmodel"),
            "--cap",
            "3",
        )
        assert code == 2
        assert "6" in err and "cap" in err

    def test_cap_env_variable(self, capsys, monkeypatch):
        monkeypatch.setenv("KCONFIG_SEM_CAP", "3")
        code, _, err = run(
            capsys, "enumerate", "--model", fixture("modules_tristate.kmodel")
        )
        assert code == 2

    def test_cap_flag_beats_env(self, capsys, monkeypatch):
        monkeypatch.setenv("KCONFIG_SEM_CAP", "3")
        code, out, _ = run(
            capsys,
            "enumerate",
            "--model",
            fixture("modules_tristate.kmodel"),
            "--cap",
            "100",
            "--count-only",
        )
        assert (code, out) == (0, "5\n")

    def test_bad_cap_env_is_a_usage_error(self, capsys, monkeypatch):
        monkeypatch.setenv("KCONFIG_SEM_CAP", "many")
        code, _, err = run(
            capsys, "enumerate", "--model", fixture("simple_boolean.kmodel")
        )
        assert code == 2
        assert "KCONFIG_SEM_CAP" in err


SELECT_CHAIN_CNF = """\
c APP 1
c LIB 2
p cnf 2 2
-2 0
-1 2 0
"""

GAP_CNF_AT_MOST_ONE = """\
c ALPHA 1
c BETA 2
p cnf 2 1
-1 -2 0
"""

GAP_CNF_EXACTLY_ONE = """\
c ALPHA 1
c BETA 2
p cnf 2 2
-1 -2 0
1 2 0
"""


class TestPropExport:
    def test_select_chain_golden(self, capsys, tmp_path):
        out_path = tmp_path / "chain.cnf"
        code, out, _ = run(
            capsys,
            "prop-export",
            "--model",
            fixture("select_chain.kmodel"),
            "--out",
            str(out_path),
        )
        assert code == 0
        assert out == (
            f"wrote {out_path}: 2 variables, 2 clauses, 0 diagnostic(s)\n"
        )
        assert out_path.read_text() == SELECT_CHAIN_CNF
        assert (tmp_path / "chain.cnf.diag").read_text() == ""

    def test_choice_encodings_differ(self, capsys, tmp_path):
        default_path = tmp_path / "amo.cnf"
        exact_path = tmp_path / "exact.cnf"
        run(
            capsys,
            "prop-export",
            "--model",
            fixture("choice_tristate_gap.kmodel"),
            "--out",
            str(default_path),
        )
        run(
            capsys,
            "prop-export",
            "--model",
            fixture("choice_tristate_gap.kmodel"),
            "--out",
            str(exact_path),
            "--choose-exactly-one",
        )
        assert default_path.read_text() == GAP_CNF_AT_MOST_ONE
        assert exact_path.read_text() == GAP_CNF_EXACTLY_ONE

    def test_diagnostics_file_is_populated(self, capsys, tmp_path):
        model = tmp_path / "m.kmodel"
        model.write_text(
            "config B1 boolean\n  prompt y\n"
            "config B2 boolean\n  prompt B1 = m\n"
        )
        out_path = tmp_path / "m.cnf"
        code, out, _ = run(
            capsys,
            "prop-export",
            "--model",
            str(model),
            "--out",
            str(out_path),
            "--porcelain",
        )
        assert code == 0
        assert out == "export\t2\t0\t1\n"
        assert (tmp_path / "m.cnf.diag").read_text() == (
            "unsupported comparison B1 = m; kept as true\n"
        )

    def test_byte_identical_across_runs(self, capsys, tmp_path):
        first = tmp_path / "a.cnf"
        second = tmp_path / "b.cnf"
        for path in (first, second):
            run(
                capsys,
                "prop-export",
                "--model",
                fixture("strings_mixed.kmodel"),
                "--out",
                str(path),
            )
        assert first.read_bytes() == second.read_bytes()


class TestCheckAbstraction:
    def test_sound_fixture(self, capsys):
        code, out, _ = run(
            capsys,
            "check-abstraction",
            "--model",
            fixture("simple_boolean.kmodel"),
        )
        assert code == 0
        assert out == (
            "checked 2 valid configuration(s): 0 violation(s) under "
            "at-most-one, 0 under exactly-one\n"
            "spurious abstract solutions: 0\n"
        )

    def test_gap_fixture(self, capsys):
        code, out, _ = run(
            capsys,
            "check-abstraction",
            "--model",
            fixture("choice_tristate_gap.kmodel"),
        )
        assert code == 1
        lines = out.splitlines()
        assert lines[0] == "VIOLATION ALPHA=m BETA=m"
        assert lines[1] == (
            "checked 6 valid configuration(s): 1 violation(s) under "
            "at-most-one, 2 under exactly-one"
        )

    def test_gap_fixture_porcelain(self, capsys):
        code, out, _ = run(
            capsys,
            "check-abstraction",
            "--model",
            fixture("choice_tristate_gap.kmodel"),
            "--porcelain",
        )
        assert code == 1
        assert out == (
            "violation\tat-most-one\tALPHA=m BETA=m\n"
            "violation\texactly-one\tALPHA=n BETA=n\n"
            "violation\texactly-one\tALPHA=m BETA=m\n"
            "summary\t6\t1\t2\t-\n"
        )


class TestInputsUntouched:
    def test_files_are_not_mutated(self, capsys):
        model_path = fixture("choice_tristate_gap.kmodel")
        before = Path(model_path).read_bytes()
        run(capsys, "enumerate", "--model", model_path)
        run(capsys, "check-abstraction", "--model", model_path)
        assert Path(model_path).read_bytes() == before

    def test_fixture_mtime_preserved(self, capsys):
        model_path = fixture("simple_boolean.kmodel")
        stamp = os.stat(model_path).st_mtime_ns
        run(capsys, "validate", "--model", model_path, "--config",
            fixture("simple_boolean_valid.kconf"))
        assert os.stat(model_path).st_mtime_ns == stamp
