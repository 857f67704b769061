"""Build script: compiles the optional Riemann-Siegel Cython kernel.

If Cython or a C compiler is unavailable the package installs pure-Python;
lforge.rs_kernel falls back to the numpy implementation at import time.
"""

import sys

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/lforge/_rs_kernel.pyx"],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # noqa: BLE001
    sys.stderr.write("lforge: building without compiled kernel (%s)\n" % exc)

setup(ext_modules=ext_modules)
