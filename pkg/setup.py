"""Build script for the compiled classification kernel.

The extension is optional: if Cython or a C toolchain is unavailable the
package installs anyway and `ridelens.geo` falls back to the numpy kernel
at import time. Build in place for development with:

    python setup.py build_ext --inplace
"""

import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Compile the kernel if possible; warn and continue if not."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # toolchain missing or broken
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(
            f"warning: compiled geo kernel not built ({exc}); "
            "the pure-Python kernel will be used",
            file=sys.stderr,
        )


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("warning: Cython not installed; skipping compiled kernel", file=sys.stderr)
        return []
    ext = Extension(
        "ridelens.geo._kernels",
        sources=["src/ridelens/geo/_kernels.pyx"],
        # -ffp-contract=off keeps edge-test arithmetic bit-identical with the
        # numpy fallback (no FMA contraction of the cross-product expression).
        extra_compile_args=["-O3", "-ffp-contract=off"],
    )
    return cythonize([ext], compiler_directives={"language_level": "3"})


setup(
    ext_modules=extensions(),
    cmdclass={"build_ext": optional_build_ext},
)
