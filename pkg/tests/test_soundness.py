"""Cross-checking the boolean abstraction against exact enumeration."""

from __future__ import annotations

from genmodels import generate_model
from kconfigsem.evaluator import Configuration
from kconfigsem.expr import EXPR_N, EXPR_Y, Eq, Leaf, M, N, Y
from kconfigsem.model import (
    ChoiceDecl,
    ConfigDecl,
    ConfigType,
    DefaultEntry,
    KconfigModel,
)
from kconfigsem.soundness import check_soundness


def free_boolean_model() -> KconfigModel:
    return KconfigModel(
        configs=(ConfigDecl("FOO", ConfigType.BOOLEAN, prompt=EXPR_Y),)
    )


def select_chain_model() -> KconfigModel:
    return KconfigModel(
        configs=(
            ConfigDecl("APP", ConfigType.BOOLEAN, prompt=EXPR_Y),
            ConfigDecl(
                "LIB",
                ConfigType.BOOLEAN,
                prompt=EXPR_N,
                reverse_dep=Leaf("APP"),
            ),
        )
    )


def tristate_gap_model() -> KconfigModel:
    return KconfigModel(
        configs=(
            ConfigDecl("A", ConfigType.TRISTATE, prompt=EXPR_Y),
            ConfigDecl("B", ConfigType.TRISTATE, prompt=EXPR_Y),
        ),
        choices=(
            ChoiceDecl(ConfigType.TRISTATE, False, EXPR_Y, ("A", "B")),
        ),
    )


class TestSoundModels:
    def test_free_boolean(self):
        report = check_soundness(free_boolean_model())
        assert report.valid_count == 2
        assert report.violations == ()
        assert report.violations_exactly_one == ()
        assert report.sound
        assert report.lines() == []
        assert report.spurious_count == 0

    def test_empty_model(self):
        report = check_soundness(KconfigModel())
        assert report.valid_count == 1
        assert report.sound
        assert report.spurious_count == 0

    def test_generated_boolean_models_are_sound(self):
        for seed in range(15):
            model = generate_model(seed, boolean_only=True)
            report = check_soundness(model)
            assert report.violations == (), serialize_hint(model, report)
            assert report.violations_exactly_one == ()


def serialize_hint(model, report):
    from kconfigsem.modelio import serialize_model

    return serialize_model(model) + "\n" + "\n".join(report.lines())


class TestPrecisionLoss:
    def test_unplaced_prompt_keeps_spurious_solutions(self):
        model = KconfigModel(
            configs=(
                ConfigDecl("A", ConfigType.BOOLEAN, prompt=EXPR_Y),
                ConfigDecl("B", ConfigType.BOOLEAN, prompt=Eq("A", M)),
            )
        )
        report = check_soundness(model)
        assert report.valid_count == 2
        assert report.violations == ()
        assert report.spurious_count == 2

    def test_spurious_count_is_skipped_for_tristates(self):
        report = check_soundness(tristate_gap_model())
        assert report.spurious_count is None


class TestKnownGaps:
    def test_default_overrides_visibility(self):
        model = KconfigModel(
            configs=(
                ConfigDecl(
                    "FOO",
                    ConfigType.BOOLEAN,
                    prompt=EXPR_N,
                    defaults=(DefaultEntry(EXPR_Y, EXPR_Y),),
                ),
            )
        )
        report = check_soundness(model)
        assert report.valid_count == 1
        assert report.lines() == ["VIOLATION FOO=y"]

    def test_select_overrides_visibility(self):
        report = check_soundness(select_chain_model())
        forced = Configuration({"APP": Y, "LIB": Y})
        assert report.valid_count == 2
        assert report.violations == (forced,)
        assert report.violations_exactly_one == (forced,)
        assert not report.sound
        assert report.lines() == ["VIOLATION APP=y LIB=y"]

    def test_tristate_choice_pair_at_m(self):
        report = check_soundness(tristate_gap_model())
        both_m = Configuration({"A": M, "B": M})
        assert report.valid_count == 6
        assert report.violations == (both_m,)
        assert not report.sound
        assert report.lines() == ["VIOLATION A=m B=m"]

    def test_exactly_one_also_rejects_all_n(self):
        report = check_soundness(tristate_gap_model())
        all_n = Configuration({"A": N, "B": N})
        both_m = Configuration({"A": M, "B": M})
        assert report.violations_exactly_one == (all_n, both_m)
