import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None  # build from the checked-in generated C instead

source = ("src/tooltalk/_core/_kernels.pyx" if cythonize
          else "src/tooltalk/_core/_kernels.c")
ext = Extension(
    "tooltalk._core._kernels",
    [source],
    include_dirs=[np.get_include()],
    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    optional=True,  # without a compiler the NumPy kernel fallback is used
)

setup(ext_modules=cythonize(ext, language_level=3) if cythonize else [ext])
