"""Build script: compiles the optional C fast-path kernels.

The compiled extension is a pure accelerator; if Cython or a C compiler is
unavailable the package installs anyway and falls back to the Python kernels
at import time.
"""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing: install without the extension
            print(f"warning: skipping compiled kernels ({exc})")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: failed to build {ext.name} ({exc}); "
                  "pure-Python kernels will be used")


try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [Extension("diolab._kernels", ["src/diolab/_kernels.pyx"])],
        language_level=3,
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions, cmdclass={"build_ext": optional_build_ext})
