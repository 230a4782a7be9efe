from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install; the solver falls back at import
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("cardzkp._exact_cover", ["src/cardzkp/_exact_cover.pyx"], extra_compile_args=["-O3"])],
        language_level=3,
    )

setup(ext_modules=ext_modules)
