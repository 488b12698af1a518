"""Build script for the optional compiled kernel extension.

The package is fully functional without the extension (a pure-Python
backend is selected at import time), so a failed compile only costs
speed. `-ffast-math` is deliberately avoided: the kernels must stay
IEEE-compliant so results are bit-reproducible run to run.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None


def extensions():
    if cythonize is None:
        return []
    # -fno-builtin-sin/-cos: stop GCC from fusing adjacent cos()+sin()
    # calls into glibc sincos(), which rounds 1 ulp differently for
    # some arguments and would break bit-parity with the pure backend.
    ext = Extension(
        "enosepca._native",
        sources=["src/enosepca/_native.pyx"],
        extra_compile_args=["-O2", "-fno-builtin-sin", "-fno-builtin-cos"],
    )
    try:
        return cythonize(
            [ext],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )
    except Exception:
        return []


setup(ext_modules=extensions())
