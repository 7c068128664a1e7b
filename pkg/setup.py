import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "orbitforge._fastkern",
                ["src/orbitforge/_fastkern.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level="3",
    )
except ImportError:
    # Without Cython the package still installs; orbitforge.kernels falls
    # back to the pure-Python twin at import time.
    ext_modules = []

setup(ext_modules=ext_modules)
