"""Build script: compiles the optional Cython measurement kernel.

The compiled extension is a pure accelerator.  If Cython or a C compiler
is unavailable the build proceeds without it and the package falls back
to the numpy kernel at import time.
"""

import numpy
from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None


class optional_build_ext(build_ext):
    """build_ext that degrades to a warning instead of failing the install."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(f"WARNING: building the compiled kernel failed ({exc}); "
              "clockchain will use the pure-Python kernel.")


ext_modules = []
if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "clockchain._ckernel",
                ["src/clockchain/_ckernel.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(
    ext_modules=ext_modules,
    cmdclass={"build_ext": optional_build_ext},
)
