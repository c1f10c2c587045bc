"""Build script for the compiled kernel extension.

The package works without the extension (a pure-numpy fallback is selected
at import time), but the compiled kernels make the large verification
suites roughly an order of magnitude faster.
"""

import numpy
from Cython.Build import cythonize
from setuptools import Extension, setup

extensions = [
    Extension(
        "normlab._kernels._core",
        ["src/normlab/_kernels/_core.pyx"],
        include_dirs=[numpy.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        extra_compile_args=["-O3"],
    )
]

setup(
    ext_modules=cythonize(
        extensions,
        compiler_directives={"language_level": "3"},
    )
)
