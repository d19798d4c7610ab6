"""Enumeration backends: compiled form, kernel agreement, selection."""

from __future__ import annotations

import pytest

from genmodels import generate_model
from kconfigsem import fastenum
from kconfigsem.expr import EXPR_Y, IntVal, Leaf
from kconfigsem.fastenum import BackendUnavailable, resolve_backend
from kconfigsem.fastenum.compile import compile_enumeration
from kconfigsem.model import ConfigDecl, ConfigType, DefaultEntry, KconfigModel
from kconfigsem.semantics import (
    build_value_universe,
    enumerate_configurations,
    validate,
)

pytestmark = pytest.mark.skipif(
    "c" not in fastenum.available_backends(),
    reason="C kernel not built",
)


class TestCompiledForm:
    def test_programs_are_deduplicated(self):
        m = KconfigModel(
            configs=(
                ConfigDecl("A", ConfigType.BOOLEAN, prompt=EXPR_Y),
                ConfigDecl("B", ConfigType.BOOLEAN, prompt=EXPR_Y),
            )
        )
        compiled = compile_enumeration(m, build_value_universe(m))
        # Shared prompt y and shared select n compile to one program each.
        assert len(compiled.programs) == 2

    def test_big_integers_disable_small_int_flag(self):
        m = KconfigModel(
            configs=(
                ConfigDecl(
                    "SIZE",
                    ConfigType.INT,
                    prompt=EXPR_Y,
                    defaults=(DefaultEntry(Leaf(IntVal(2**80)), EXPR_Y),),
                ),
            )
        )
        compiled = compile_enumeration(m, build_value_universe(m))
        assert not compiled.fits_small_ints


class TestBackendSelection:
    def test_unknown_backend_rejected(self):
        with pytest.raises(BackendUnavailable):
            resolve_backend("turbo")

    def test_env_override(self, monkeypatch):
        monkeypatch.setenv("KCONFIG_SEM_BACKEND", "py")
        assert resolve_backend(None) == "py"

    def test_flag_beats_env(self, monkeypatch):
        monkeypatch.setenv("KCONFIG_SEM_BACKEND", "py")
        assert resolve_backend("c") == "c"


class TestKernelAgreement:
    def test_backends_agree_on_generated_models(self):
        for seed in range(40):
            model = generate_model(seed)
            got_py = enumerate_configurations(model, backend="py")
            got_c = enumerate_configurations(model, backend="c")
            assert got_py == got_c, f"seed {seed} diverged"

    def test_backends_agree_on_counts(self):
        for seed in range(10):
            model = generate_model(seed)
            n_py = enumerate_configurations(model, backend="py", count_only=True)
            n_c = enumerate_configurations(model, backend="c", count_only=True)
            assert n_py == n_c == len(enumerate_configurations(model))

    def test_kernels_match_reference_validator(self):
        for seed in range(12):
            model = generate_model(seed)
            universe = build_value_universe(model)
            expected = [
                c for c in universe.iter_assignments() if validate(model, c).valid
            ]
            assert enumerate_configurations(model, universe, backend="c") == expected

    def test_big_integer_model_falls_back_cleanly(self):
        m = KconfigModel(
            configs=(
                ConfigDecl(
                    "SIZE",
                    ConfigType.INT,
                    defaults=(DefaultEntry(Leaf(IntVal(2**80)), EXPR_Y),),
                ),
            )
        )
        configs = enumerate_configurations(m, backend="c")
        assert [c["SIZE"] for c in configs] == [IntVal(2**80)]
