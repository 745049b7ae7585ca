"""Build script.

The compiled table-scan kernel is optional: if Cython or a C compiler is
unavailable the package installs anyway and falls back to the pure-Python
kernel (monoidkit.kernels picks the implementation at import time).
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/monoidkit/kernels/_tables_cy.pyx"],
        compiler_directives={
            "language_level": 3,
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
except Exception as exc:  # pragma: no cover - build-env dependent
    import sys

    print(f"monoidkit: building without compiled kernel ({exc})", file=sys.stderr)

setup(ext_modules=ext_modules)
