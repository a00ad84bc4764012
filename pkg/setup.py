"""Build script wiring the optional C kernel.

The extension is a pure accelerator: if Cython or a C compiler is missing the
build falls back to the pure-Python kernel and the install still succeeds.
"""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """build_ext that downgrades compiler failures to a warning."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing entirely
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        import sys

        print(
            "warning: C kernel build failed (%s); using the pure-Python kernel"
            % exc,
            file=sys.stderr,
        )


def extensions():
    import os

    if not os.path.exists("src/abdukit/solver/_kernel.pyx"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    return cythonize(
        [
            Extension(
                "abdukit.solver._kernel",
                ["src/abdukit/solver/_kernel.pyx"],
            )
        ],
        language_level=3,
    )


setup(
    ext_modules=extensions(),
    cmdclass={"build_ext": optional_build_ext},
)
