"""Builds the optional Cython scoring kernel (docketd._speedups).

The package works without it; docketd.kernel falls back to the numpy
implementation when the extension is missing.
"""

from setuptools import Extension, setup

try:
    import numpy
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "docketd._speedups",
                ["src/docketd/_speedups.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
