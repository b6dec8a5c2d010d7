import os

import numpy as np
from setuptools import Extension, setup

ext_modules = []
if os.environ.get("LAGRANGE_WEYL_PURE", "") not in ("1", "true", "yes"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [Extension("lagrange_weyl._kernels", ["src/lagrange_weyl/_kernels.pyx"],
                       include_dirs=[np.get_include()])],
            compiler_directives={"language_level": 3},
        )

setup(ext_modules=ext_modules)
