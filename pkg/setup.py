import os

from setuptools import Extension, setup

# The compiled kernels are optional: UUDNLG_NO_EXT=1 skips the build and the
# package falls back to the pure-Python implementations at import time.
ext_modules = []
if os.environ.get("UUDNLG_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("uudnlg._speedups", ["src/uudnlg/_speedups.pyx"])],
            language_level=3,
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules)
