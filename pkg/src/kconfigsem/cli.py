"""Command-line front end.

Subcommands map one-to-one onto the engine operations:

    kconfigsem wf-check          --model m.kmodel
    kconfigsem validate          --model m.kmodel --config c.kconf
    kconfigsem enumerate         --model m.kmodel [--cap N] [--count-only]
    kconfigsem prop-export       --model m.kmodel --out f.cnf
    kconfigsem check-abstraction --model m.kmodel [--cap N]

Exit codes: 0 success / valid, 1 semantic negative (invalid
configuration, well-formedness violations, soundness violations),
2 usage or parse errors.  Reports go to stdout, errors to stderr.
`--porcelain` switches every command to tab-separated fields that
stay stable across releases.  The environment variable
KCONFIG_SEM_CAP overrides the default enumeration cap; an explicit
--cap beats both.
"""

from __future__ import annotations

import argparse
import os
import sys

from .abstraction import build_formula
from .cnf import ClauseBudgetExceeded, build_cnf_doc, make_numbering
from .model import KconfigModel, check_well_formed
from .modelio import (
    ModelParseError,
    parse_config,
    parse_model,
    serialize_config_line,
)
from .semantics import (
    DEFAULT_ENUMERATION_CAP,
    EnumerationCapExceeded,
    enumerate_configurations,
    validate,
)
from .soundness import check_soundness

CAP_ENV_VAR = "KCONFIG_SEM_CAP"


class _UsageError(Exception):
    pass


def _read_file(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as err:
        raise _UsageError(f"cannot read {path}: {err.strerror}") from err


def _load_model(path: str) -> KconfigModel:
    return parse_model(_read_file(path))


def _effective_cap(flag_value: int | None) -> int:
    if flag_value is not None:
        return flag_value
    env = os.environ.get(CAP_ENV_VAR)
    if env is None:
        return DEFAULT_ENUMERATION_CAP
    try:
        return int(env)
    except ValueError:
        raise _UsageError(
            f"{CAP_ENV_VAR} must be an integer, got {env!r}"
        ) from None


def _report_wf(model: KconfigModel, porcelain: bool) -> int:
    violations = check_well_formed(model)
    for v in violations:
        if porcelain:
            print(f"violation\t{v.rule}\t{v.subject}\t{v.message}")
        else:
            print(f"{v.rule} {v.subject}: {v.message}")
    return 1 if violations else 0


def _cmd_wf_check(args: argparse.Namespace) -> int:
    return _report_wf(_load_model(args.model), args.porcelain)


def _cmd_validate(args: argparse.Namespace) -> int:
    model = _load_model(args.model)
    if _report_wf(model, args.porcelain):
        return 1
    config = parse_config(_read_file(args.config), model)
    report = validate(model, config)
    if report.valid:
        print("result\tvalid" if args.porcelain else "valid")
        return 0
    print("result\tinvalid" if args.porcelain else "invalid")
    if args.explain:
        for v in report.failures():
            if args.porcelain:
                print(f"failure\t{v.denotation}\t{v.subject}\t{v.diagnostic}")
            else:
                print(f"{v.denotation} {v.subject}: {v.diagnostic}")
    return 1


def _cmd_enumerate(args: argparse.Namespace) -> int:
    model = _load_model(args.model)
    if _report_wf(model, args.porcelain):
        return 1
    cap = _effective_cap(args.cap)
    if args.count_only:
        count = enumerate_configurations(model, cap=cap, count_only=True)
        print(f"count\t{count}" if args.porcelain else count)
        return 0
    for c in enumerate_configurations(model, cap=cap):
        line = serialize_config_line(c)
        print(f"config\t{line}" if args.porcelain else line)
    return 0


def _cmd_prop_export(args: argparse.Namespace) -> int:
    model = _load_model(args.model)
    if _report_wf(model, args.porcelain):
        return 1
    diagnostics: list[str] = []
    formula = build_formula(
        model, exactly_one=args.choose_exactly_one, diagnostics=diagnostics
    )
    doc = build_cnf_doc(formula, make_numbering(model))
    diag_path = args.out + ".diag"
    try:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(doc.render())
        with open(diag_path, "w", encoding="utf-8") as handle:
            for message in diagnostics:
                handle.write(message + "\n")
    except OSError as err:
        raise _UsageError(f"cannot write {err.filename}: {err.strerror}") from err
    nvars, nclauses = len(doc.numbering), len(doc.clauses)
    if args.porcelain:
        print(f"export\t{nvars}\t{nclauses}\t{len(diagnostics)}")
    else:
        print(
            f"wrote {args.out}: {nvars} variables, {nclauses} clauses, "
            f"{len(diagnostics)} diagnostic(s)"
        )
    return 0


def _cmd_check_abstraction(args: argparse.Namespace) -> int:
    model = _load_model(args.model)
    if _report_wf(model, args.porcelain):
        return 1
    report = check_soundness(model, cap=_effective_cap(args.cap))
    if args.porcelain:
        for c in report.violations:
            print(f"violation\tat-most-one\t{serialize_config_line(c)}")
        for c in report.violations_exactly_one:
            print(f"violation\texactly-one\t{serialize_config_line(c)}")
        spurious = "-" if report.spurious_count is None else report.spurious_count
        print(
            f"summary\t{report.valid_count}\t{len(report.violations)}"
            f"\t{len(report.violations_exactly_one)}\t{spurious}"
        )
    else:
        for line in report.lines():
            print(line)
        print(
            f"checked {report.valid_count} valid configuration(s): "
            f"{len(report.violations)} violation(s) under at-most-one, "
            f"{len(report.violations_exactly_one)} under exactly-one"
        )
        if report.spurious_count is not None:
            print(f"spurious abstract solutions: {report.spurious_count}")
    return 0 if report.sound else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kconfigsem",
        description="Validate, enumerate, and abstract configuration models.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--model", required=True, help="model file")
        p.add_argument(
            "--porcelain",
            action="store_true",
            help="stable tab-separated output",
        )

    p = sub.add_parser("wf-check", help="check well-formedness rules")
    common(p)
    p.set_defaults(func=_cmd_wf_check)

    p = sub.add_parser("validate", help="validate a configuration")
    common(p)
    p.add_argument("--config", required=True, help="configuration file")
    p.add_argument(
        "--explain", action="store_true", help="print each failing check"
    )
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("enumerate", help="list all valid configurations")
    common(p)
    p.add_argument("--cap", type=int, help="assignment-count cap")
    p.add_argument(
        "--count-only", action="store_true", help="print only the count"
    )
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("prop-export", help="write the abstraction as DIMACS")
    common(p)
    p.add_argument("--out", required=True, help="output path")
    p.add_argument(
        "--choose-exactly-one",
        action="store_true",
        help="encode choices as exactly-one instead of at-most-one",
    )
    p.set_defaults(func=_cmd_prop_export)

    p = sub.add_parser(
        "check-abstraction", help="cross-check abstraction soundness"
    )
    common(p)
    p.add_argument("--cap", type=int, help="assignment-count cap")
    p.set_defaults(func=_cmd_check_abstraction)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ModelParseError as err:
        for issue in err.issues:
            print(issue, file=sys.stderr)
        return 2
    except (EnumerationCapExceeded, ClauseBudgetExceeded, _UsageError) as err:
        print(err, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
