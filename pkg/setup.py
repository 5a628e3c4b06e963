from setuptools import Extension, setup

# The compiled kernel is an optimization, never a requirement: if Cython or a
# C toolchain is missing we ship the pure-Python fallback selected at import.
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "padicdyn._core.kernel",
                ["src/padicdyn/_core/kernel.pyx"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
