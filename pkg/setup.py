import os

from setuptools import Extension, setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "rrcr._kernels_cy",
                ["src/rrcr/_kernels_cy.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    # Without Cython the package still installs; the pure-Python kernel
    # backend is selected automatically at import time.
    if not os.environ.get("RRCR_ALLOW_PURE_BUILD"):
        print("Cython/numpy not available at build time: building without the "
              "compiled kernel extension (pure-Python backend will be used).")

setup(ext_modules=ext_modules)
