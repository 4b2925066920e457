import warnings

import numpy
from setuptools import Extension, setup

# The compiled kernels are an optional speedup; the package falls back to the
# numpy implementations in terraml.kernels when the extension is absent.
try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "terraml.kernels._ckernels",
                ["src/terraml/kernels/_ckernels.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    warnings.warn("Cython not available; building without compiled kernels")
    extensions = []

setup(ext_modules=extensions)
