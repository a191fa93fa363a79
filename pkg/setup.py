# Builds the optional compiled kernel module.  The package is fully
# functional without it (pure-Python fallback, see pgroupdim.kernels);
# the extension just makes element arithmetic and row reduction fast.
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("pgroupdim._core", ["src/pgroupdim/_core.pyx"])],
        compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
