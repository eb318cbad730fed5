"""Build script: compiles the Cython estimator kernels.

The compiled extension is optional at runtime; ``exorder.kernels`` falls
back to the pure-NumPy implementation if the import fails.  To rebuild in
place::

    python setup.py build_ext --inplace
"""

import numpy
from setuptools import setup
from setuptools.extension import Extension

from Cython.Build import cythonize

extensions = [
    Extension(
        "exorder._kernels",
        ["src/exorder/_kernels.pyx"],
        include_dirs=[numpy.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        extra_compile_args=["-O3"],
    ),
]

setup(ext_modules=cythonize(extensions, language_level=3))
