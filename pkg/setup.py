"""Build script for the compiled k-means kernel.

The package works without the extension (a pure-numpy twin is selected at
import time), so a failed compile is not fatal to `pip install` -- but the
sdist/wheel builds produced here always attempt it.
"""

from Cython.Build import cythonize
from setuptools import Extension, setup

setup(
    ext_modules=cythonize(
        [
            Extension(
                "taxostrat._kernels._ckmeans",
                ["src/taxostrat/_kernels/_ckmeans.pyx"],
            )
        ],
        language_level="3",
    )
)
