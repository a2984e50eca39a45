"""Builds the optional compiled evaluation kernel.

Without Cython (or a C compiler) the package still installs and runs on the
pure-Python kernel.
"""

from setuptools import setup

try:
    from Cython.Build import cythonize
    from setuptools import Extension
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("metakernel._ceval", ["src/metakernel/_ceval.pyx"],
                   extra_compile_args=["-O2"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
