"""Cross-check: does every valid configuration satisfy the abstraction?

The boolean formula is meant to be a weakening of the exact
semantics, so the image of each valid configuration under the
per-type boolean reading must satisfy it.  This module enumerates the
valid configurations, evaluates the formula under both choice
encodings, and collects the configurations that falsify it.

For models made of boolean configs only, the abstraction is expected
to be sound, and the report additionally counts spurious abstract
solutions (satisfying assignments that are no valid configuration's
image) as a measure of precision loss.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .abstraction import abstract_configuration, build_formula
from .evaluator import Configuration
from .model import ConfigType, KconfigModel
from .modelio import serialize_config_line
from .prop import eval_prop
from .semantics import ValueUniverse, enumerate_configurations

SPURIOUS_VAR_LIMIT = 20


@dataclass(frozen=True)
class SoundnessReport:
    valid_count: int
    violations: tuple[Configuration, ...]
    violations_exactly_one: tuple[Configuration, ...]
    spurious_count: int | None

    @property
    def sound(self) -> bool:
        """True when the default (at-most-one) encoding has no violations."""

        return not self.violations

    def lines(self) -> list[str]:
        return [
            "VIOLATION " + serialize_config_line(c) for c in self.violations
        ]


def _spurious_count(
    model: KconfigModel, formula, images: set[tuple[tuple[str, bool], ...]]
) -> int | None:
    if any(cfg.type is not ConfigType.BOOLEAN for cfg in model.configs):
        return None
    names = [cfg.name for cfg in model.configs]
    if len(names) > SPURIOUS_VAR_LIMIT:
        return None
    count = 0
    for bits in product((False, True), repeat=len(names)):
        env = dict(zip(names, bits))
        if eval_prop(formula, env) and tuple(sorted(env.items())) not in images:
            count += 1
    return count


def check_soundness(
    model: KconfigModel,
    universe: ValueUniverse | None = None,
    cap: int | None = None,
) -> SoundnessReport:
    formula = build_formula(model, exactly_one=False)
    formula_exact = build_formula(model, exactly_one=True)
    valid = enumerate_configurations(model, universe, cap=cap)

    violations = []
    violations_exact = []
    images: set[tuple[tuple[str, bool], ...]] = set()
    for c in valid:
        env = abstract_configuration(model, c)
        images.add(tuple(sorted(env.items())))
        if not eval_prop(formula, env):
            violations.append(c)
        if not eval_prop(formula_exact, env):
            violations_exact.append(c)

    return SoundnessReport(
        valid_count=len(valid),
        violations=tuple(violations),
        violations_exactly_one=tuple(violations_exact),
        spurious_count=_spurious_count(model, formula, images),
    )
