import os

import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pragma: no cover - the pure-Python kernels still work
    cythonize = None

ext_modules = []
if cythonize is not None and not os.environ.get("SIEGEL_LAB_NO_EXT"):
    ext_modules = cythonize(
        [
            Extension(
                "siegel_lab._ckernels",
                ["src/siegel_lab/_ckernels.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
