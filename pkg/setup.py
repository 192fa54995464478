import os

from setuptools import Extension, setup

# The compiled kernels are an optional accelerator; the pure Python module
# twistzeta._kernels_py implements the same contract and is selected at
# import time when the extension is absent.  Set TWISTZETA_NO_EXT=1 to skip
# the build entirely (no compiler, cross builds, debugging).
ext_modules = []
if os.environ.get("TWISTZETA_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        extensions = [
            Extension("twistzeta._kernels", ["src/twistzeta/_kernels.pyx"]),
        ]
        ext_modules = cythonize(
            extensions, compiler_directives={"language_level": "3"}
        )

setup(ext_modules=ext_modules)
