from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

core_sources = [
    "src/graphcore.cpp",
    "src/planar.cpp",
    "src/flow.cpp",
    "src/rays.cpp",
    "src/weaver.cpp",
    "src/transfer.cpp",
    "src/verify.cpp",
    "src/json_io.cpp",
]

setup(
    ext_modules=[
        Pybind11Extension(
            "gridweaver._core",
            ["python/module.cpp"] + core_sources,
            include_dirs=["include", "vendor"],
            cxx_std=20,
        )
    ],
    cmdclass={"build_ext": build_ext},
)
