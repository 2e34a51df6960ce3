"""Build script: compiles the optional Cython kernel extension.

The package is fully functional without the extension (a pure-Python
reference backend is selected at import time), so any failure here is
downgraded to a warning.  Set DIPOLE_LANDAU_NO_EXT=1 to skip the build
entirely.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("DIPOLE_LANDAU_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "dipole_landau._core._compiled",
                    ["src/dipole_landau/_core/_compiled.pyx"],
                    extra_compile_args=["-O3"],
                    optional=True,
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
