import sys

from setuptools import Extension, setup

# The compiled relation kernel is optional: the package falls back to the
# pure-Python implementation in cornercalc._slowrel if the extension is
# missing, so a failed compile must not break installation.
ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("cornercalc._fastrel", ["src/cornercalc/_fastrel.pyx"])],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover
    sys.stderr.write(f"warning: building without compiled kernel ({exc})\n")

setup(ext_modules=ext_modules)
