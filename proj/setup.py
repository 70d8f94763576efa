from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

ext = Pybind11Extension(
    "lotpricing",
    sources=[
        "src/types.cpp",
        "src/model.cpp",
        "src/simplex.cpp",
        "src/buyone_lp.cpp",
        "src/rounding.cpp",
        "src/constructions.cpp",
        "src/oracles.cpp",
        "src/io.cpp",
        "src/python/module.cpp",
    ],
    include_dirs=["include", "vendor"],
    cxx_std=20,
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
