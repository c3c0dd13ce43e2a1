"""Build script for the optional compiled simplex core.

The package works without the extension (a numpy fallback is selected at
import time), so a failed compile downgrades to a warning instead of
aborting the install.
"""

import os
import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing or broken
            print(f"warning: compiled kernel skipped ({exc}); "
                  "pure-python fallback will be used", file=sys.stderr)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: building {ext.name} failed ({exc}); "
                  "pure-python fallback will be used", file=sys.stderr)


def extensions():
    try:
        import numpy
        from Cython.Build import cythonize
    except ImportError:
        return []
    src = "src/scgep/milp/_kernel/_speedups.pyx"
    if not os.path.exists(src):
        return []
    ext = Extension(
        "scgep.milp._kernel._speedups",
        [src],
        include_dirs=[numpy.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        extra_compile_args=["-O3"],
    )
    return cythonize([ext], compiler_directives={"language_level": "3"})


setup(ext_modules=extensions(), cmdclass={"build_ext": optional_build_ext})
