"""Build script.

The package is pure Python apart from one optional Cython extension,
``kconfigsem.fastenum._ckernel``, which accelerates brute-force
enumeration.  The extension is marked optional: when Cython or a C
compiler is unavailable the install still succeeds and the package
falls back to the pure-Python kernel at import time.
"""

import os

from setuptools import Extension, setup

PYX = "src/kconfigsem/fastenum/_ckernel.pyx"

ext_modules = []
if os.environ.get("KCONFIGSEM_PURE_PYTHON") != "1" and os.path.exists(PYX):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("kconfigsem.fastenum._ckernel", [PYX], optional=True)],
            language_level="3",
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
