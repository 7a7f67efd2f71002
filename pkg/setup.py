from setuptools import Extension, setup
from Cython.Build import cythonize

ext_modules = cythonize(
    [Extension("revarith._simcore", ["src/revarith/_simcore.pyx"])],
    compiler_directives={"language_level": "3"},
)

setup(ext_modules=ext_modules)
