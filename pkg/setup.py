"""Optional Cython build for the torsion search kernel.

Metadata lives in pyproject.toml. When Cython or a C compiler is missing,
the package installs without the extension and uses the pure-Python kernel.
"""
from setuptools import setup
from setuptools.command.build_ext import build_ext

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None


class OptionalBuildExt(build_ext):
    """Skip the extension instead of failing when compilation is impossible."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # no compiler, missing headers
            print(f"warning: compiled kernel not built ({exc}); using the pure-Python kernel")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: {ext.name} not built ({exc}); using the pure-Python kernel")


ext_modules = []
if cythonize is not None:
    ext_modules = cythonize(["src/ellsurf/_kernels.pyx"], language_level=3, quiet=True)

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})
