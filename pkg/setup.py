"""Build script: compiles the optional accelerator extension when possible.

The package is fully functional without the extension (a NumPy fallback is
selected at import time), so any failure here downgrades to a warning and a
pure-Python install instead of aborting.
"""

import sys

from setuptools import setup
from setuptools.command.build_ext import build_ext


class _OptionalBuildExt(build_ext):
    """build_ext that gives up gracefully instead of failing the install."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            self._skip(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._skip(exc)

    @staticmethod
    def _skip(exc):
        sys.stderr.write(
            "warning: could not build the larspath._kernels extension "
            f"({exc!r}); falling back to the pure-Python kernels\n"
        )


def _extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        sys.stderr.write(
            "warning: Cython not available; installing with pure-Python "
            "kernels only\n"
        )
        return []
    from setuptools import Extension

    ext = Extension(
        "larspath._kernels",
        sources=["src/larspath/_kernels.pyx"],
    )
    return cythonize([ext], language_level="3")


setup(
    ext_modules=_extensions(),
    cmdclass={"build_ext": _OptionalBuildExt},
)
