"""Build script: compiles the optional Cython contraction kernel.

The package is fully functional without the extension; jacobiweights._core
falls back to the pure-Python kernel when the compiled twin is missing or
when JACOBIWEIGHTS_KERNEL=pure is set.
"""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    # A failed compile must not fail the install; the pure kernel takes over.
    def run(self):
        try:
            super().run()
        except Exception as exc:
            print("jacobiweights: skipping compiled kernel (%s)" % exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print("jacobiweights: skipping %s (%s)" % (ext.name, exc))


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    return cythonize(
        [
            Extension(
                "jacobiweights._core._contract_cy",
                ["src/jacobiweights/_core/_contract_cy.pyx"],
            )
        ],
        language_level=3,
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": optional_build_ext})
