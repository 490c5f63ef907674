"""Build script for the optional compiled pivot kernels.

The package is pure Python apart from ``wignerlab._kernels._cykernels``,
a Cython translation of the exact-arithmetic pivot loops.  The extension
is a strict accelerator: if Cython or a C compiler is missing the build
falls through and the package uses the pure-Python kernels instead.
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Never fail the install because the accelerator did not compile."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # pragma: no cover - depends on toolchain
            print(f"warning: skipping compiled kernels ({exc!r})")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # pragma: no cover - depends on toolchain
            print(f"warning: skipping {ext.name} ({exc!r})")


extensions = []
if not os.environ.get("WIGNERLAB_SKIP_EXTENSION"):
    try:
        from Cython.Build import cythonize

        extensions = cythonize(
            [
                Extension(
                    "wignerlab._kernels._cykernels",
                    ["src/wignerlab/_kernels/_cykernels.pyx"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:  # pragma: no cover - depends on toolchain
        print("warning: Cython not available, building without compiled kernels")

setup(ext_modules=extensions, cmdclass={"build_ext": OptionalBuildExt})
