import numpy
from setuptools import Extension, setup

# The compiled search kernel is optional: without Cython (or a C compiler)
# the package falls back to the numpy implementation at import time.
try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "hohlov._kernels._native",
                ["src/hohlov/_kernels/_native.pyx"],
                include_dirs=[numpy.get_include()],
                # -ffp-contract=off keeps the scalar loop bit-compatible
                # with the vectorized fallback (no surprise FMA folding).
                extra_compile_args=["-O3", "-ffp-contract=off"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
