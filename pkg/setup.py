import warnings

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Build the scan kernel if a toolchain is available, else fall back.

    The package is fully functional without the extension; diofact.kernels
    selects the pure-Python twin at import time when the compiled module is
    missing.
    """

    def run(self):
        try:
            super().run()
        except Exception as exc:  # missing compiler, broken headers, ...
            warnings.warn(f"skipping C extension build: {exc}")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"skipping {ext.name}: {exc}")


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    return cythonize(
        [Extension("diofact._brocard", ["src/diofact/_brocard.pyx"])],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
