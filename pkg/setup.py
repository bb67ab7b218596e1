"""Build script: compiles the optional Cython kernels when Cython is available."""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("PPVGROUP_NO_EXT", "") not in ("1", "true", "yes"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [Extension("ppvgroup._speedups._ckernels", ["src/ppvgroup/_speedups/_ckernels.pyx"])],
            language_level=3,
        )

setup(ext_modules=ext_modules)
