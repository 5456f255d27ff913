"""Build script: compiles the optional Cython routing kernel.

The extension is a pure speedup; if the toolchain is unavailable the
package installs without it and falls back to the numpy implementation
(see caddy.ncmf.routing).
"""

from setuptools import setup, Extension
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Build the extension if possible, otherwise continue without it."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # pragma: no cover - toolchain dependent
            print(f"warning: skipping compiled kernels ({exc})")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # pragma: no cover - toolchain dependent
            print(f"warning: skipping {ext.name} ({exc})")


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:  # pragma: no cover - build without Cython
        return []
    ext = Extension("caddy.ncmf._routing", ["src/caddy/ncmf/_routing.pyx"])
    return cythonize([ext], language_level=3)


setup(
    ext_modules=extensions(),
    cmdclass={"build_ext": OptionalBuildExt},
)
