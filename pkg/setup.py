from setuptools import Extension, setup
from Cython.Build import cythonize
import numpy as np

# -ffp-contract=off: the numpy fallback must produce bit-identical matrices,
# so the compiler may not fuse the multiply-adds in the distance kernel.
ext = Extension(
    "recurplot._kernels._core",
    ["src/recurplot/_kernels/_core.pyx"],
    include_dirs=[np.get_include()],
    extra_compile_args=["-O2", "-ffp-contract=off"],
    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
)

setup(ext_modules=cythonize([ext], language_level=3))
