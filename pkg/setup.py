"""Builds the optional compiled kernel; the package works without it."""
import os

from setuptools import setup

ext_modules = []
if not os.environ.get("SUBTILE_NO_EXT"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "subtile._ckernel",
                    ["src/subtile/_ckernel.pyx"],
                    language="c++",
                    extra_compile_args=["-O3", "-std=c++17"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
