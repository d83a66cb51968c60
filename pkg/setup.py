"""Build hook for the optional compiled kernels; metadata lives in pyproject.toml."""

import os

from setuptools import setup

ext_modules = []
if not os.environ.get("FOLSPACE_PURE_PYTHON"):
    try:
        import numpy
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("folspace._kernels", ["src/folspace/_kernels.pyx"], include_dirs=[numpy.get_include()],
                       define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")])],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
