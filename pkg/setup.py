"""Build script: compiles the optional Cython core.

The package works without the extension (a pure-numpy fallback is selected
at import time), so a missing Cython or a failed compile must not break the
install.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("bergkernel._core", ["src/bergkernel/_core.pyx"])],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
