"""Build hook: compile the rewriting kernel when Cython and a compiler exist."""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("starplane._kernels", ["src/starplane/_kernels.pyx"],
                   extra_compile_args=["-O2"])],
        compiler_directives={"language_level": "3"},
        quiet=True,
    )
except Exception as exc:  # pragma: no cover - build environment dependent
    print(f"starplane: building without compiled kernel ({exc})")

setup(ext_modules=ext_modules)
