import os

import numpy as np
from setuptools import Extension, setup

ext_modules = []
if os.environ.get("LSTAT_EDGEWORTH_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:  # pure-Python install
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "lstat_edgeworth._core",
                    ["src/lstat_edgeworth/_core.pyx"],
                    include_dirs=[np.get_include()],
                    # no contraction: results must match the numpy fallback bit for bit
                    extra_compile_args=["-O3", "-ffp-contract=off"],
                )
            ],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )

setup(ext_modules=ext_modules)
