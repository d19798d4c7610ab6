"""Compare the compiled enumeration kernel against the pure-Python one.

Builds dependency chains of tristate configs (every config's prompt is
the previous config, every default promotes with it), so the universe
grows as 3^width and the validator does real work on each assignment.
Both kernels count the valid configurations of the same models; the
table reports wall times and the speedup.

Run from the repository root after installing the package:

    python benchmarks/bench_enumerate.py
    python benchmarks/bench_enumerate.py --widths 8,10,12 --repeats 5
"""

from __future__ import annotations

import argparse
import time

from kconfigsem.expr import EXPR_N, EXPR_Y, Leaf, M
from kconfigsem.fastenum import available_backends
from kconfigsem.model import ConfigDecl, ConfigType, DefaultEntry, KconfigModel
from kconfigsem.semantics import build_value_universe, enumerate_configurations


def chain_model(width: int) -> KconfigModel:
    """A MODULES config plus ``width`` tristates chained by prompts."""

    configs = [
        ConfigDecl(
            "MODULES",
            ConfigType.BOOLEAN,
            prompt=EXPR_Y,
        )
    ]
    previous = "MODULES"
    for i in range(width):
        name = f"LINK{i:02d}"
        configs.append(
            ConfigDecl(
                name,
                ConfigType.TRISTATE,
                prompt=Leaf(previous),
                defaults=(DefaultEntry(Leaf(M), Leaf(previous)),),
                reverse_dep=EXPR_N,
            )
        )
        previous = name
    return KconfigModel(configs=tuple(configs))


def time_backend(model: KconfigModel, backend: str, repeats: int) -> tuple[float, int]:
    """Best-of-``repeats`` wall time and the count it produced."""

    universe = build_value_universe(model)
    best = float("inf")
    count = -1
    for _ in range(repeats):
        started = time.perf_counter()
        count = enumerate_configurations(
            model, universe, count_only=True, backend=backend
        )
        best = min(best, time.perf_counter() - started)
    return best, count


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--widths",
        default="6,8,10,12",
        help="comma-separated chain widths to benchmark (default: %(default)s)",
    )
    parser.add_argument(
        "--repeats",
        type=int,
        default=3,
        help="timed runs per cell, best one wins (default: %(default)s)",
    )
    args = parser.parse_args(argv)
    widths = [int(w) for w in args.widths.split(",") if w]

    backends = available_backends()
    if "c" not in backends:
        print("note: compiled kernel not installed, timing pure Python only")

    header = f"{'width':>5} {'assignments':>12} {'valid':>8}"
    for backend in backends:
        header += f" {backend + ' (s)':>10}"
    if len(backends) > 1:
        header += f" {'speedup':>8}"
    print(header)

    for width in widths:
        model = chain_model(width)
        universe_size = build_value_universe(model).size
        times: dict[str, float] = {}
        counts: set[int] = set()
        for backend in backends:
            elapsed, count = time_backend(model, backend, args.repeats)
            times[backend] = elapsed
            counts.add(count)
        if len(counts) != 1:
            print(f"backend disagreement at width {width}: {sorted(counts)}")
            return 1
        row = f"{width:>5} {universe_size:>12} {counts.pop():>8}"
        for backend in backends:
            row += f" {times[backend]:>10.4f}"
        if len(backends) > 1:
            row += f" {times['py'] / times['c']:>7.1f}x"
        print(row)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
