"""Builds the optional native kernels. The package works without them:
eyedoc.kernels falls back to the pure-Python implementation at import.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [Extension("eyedoc.kernels._native", ["src/eyedoc/kernels/_native.pyx"])],
        compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
