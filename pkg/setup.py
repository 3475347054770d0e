import numpy
from setuptools import Extension, setup

# The compiled trial kernel is optional: without Cython (or a working C
# toolchain) the package falls back to the vectorized numpy kernel.
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "contextprob._trials",
                ["src/contextprob/_trials.pyx"],
                include_dirs=[numpy.get_include()],
            )
        ],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
