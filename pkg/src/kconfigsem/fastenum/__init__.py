"""Enumeration kernels: a compiled C extension with a pure-Python twin.

The extension is built at install time when Cython and a C compiler
are available; otherwise the pure-Python kernel takes over, selected
here at import.  ``KCONFIG_SEM_BACKEND`` (``c`` or ``py``) forces a
specific kernel, which the benchmark and the differential tests use.
"""

from __future__ import annotations

import os

from .compile import CompiledEnumeration, compile_enumeration
from . import pykernel

try:
    from . import _ckernel
except ImportError:
    _ckernel = None

DEFAULT_BACKEND = "c" if _ckernel is not None else "py"


class BackendUnavailable(RuntimeError):
    pass


def available_backends() -> tuple[str, ...]:
    return ("py", "c") if _ckernel is not None else ("py",)


def resolve_backend(name: str | None = None) -> str:
    if name is None:
        name = os.environ.get("KCONFIG_SEM_BACKEND") or DEFAULT_BACKEND
    if name not in ("py", "c"):
        raise BackendUnavailable(f"unknown enumeration backend {name!r}")
    if name == "c" and _ckernel is None:
        raise BackendUnavailable(
            "the compiled enumeration kernel is not installed; "
            "reinstall with a C compiler or use KCONFIG_SEM_BACKEND=py"
        )
    return name


def run(
    compiled: CompiledEnumeration,
    count_only: bool = False,
    backend: str | None = None,
):
    """Run enumeration over a compiled model on the selected kernel."""

    name = resolve_backend(backend)
    if name == "c" and not compiled.fits_small_ints:
        # Numeric payloads beyond 64 bits only fit the Python kernel.
        name = "py"
    if name == "c":
        return _ckernel.run(compiled, count_only)
    return pykernel.run(compiled, count_only)


__all__ = [
    "BackendUnavailable",
    "CompiledEnumeration",
    "available_backends",
    "compile_enumeration",
    "resolve_backend",
    "run",
]
