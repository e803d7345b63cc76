"""Build script for the optional compiled kernel.

The package is fully functional without the extension; hhone._kernel
falls back to a vectorized numpy implementation when the compiled core
is missing.  Build in place with `python setup.py build_ext --inplace`
or let pip build it during an editable install.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("hhone._kernel._core", ["src/hhone/_kernel/_core.pyx"])],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
