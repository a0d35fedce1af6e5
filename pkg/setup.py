"""Build script for the optional compiled propagator kernel.

The package works without the extension (a SciPy-based fallback is selected
at import time); the kernel only accelerates the inner ODE loop. Build
failures therefore downgrade to a warning instead of aborting the install.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None:
    ext = Extension(
        "superddp._backend._kernel",
        ["src/superddp/_backend/_kernel.pyx"],
        optional=True,
    )
    ext_modules = cythonize(
        [ext],
        compiler_directives={
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
            "language_level": "3",
        },
    )

setup(ext_modules=ext_modules)
