"""Build the optional compiled kernel extension.

The package is fully functional without it (graphtok._kernels falls back to
the pure-Python twin), so a missing compiler or Cython only costs speed.
"""

import setuptools

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            setuptools.Extension(
                "graphtok._speedups",
                ["src/graphtok/_speedups.pyx"],
                language="c",
            )
        ],
        language_level=3,
    )
except ImportError:
    pass

setuptools.setup(ext_modules=ext_modules)
