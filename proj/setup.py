import os
import subprocess

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup


def eigen_include():
    try:
        flags = subprocess.check_output(
            ["pkg-config", "--cflags-only-I", "eigen3"], text=True
        ).split()
        for flag in flags:
            if flag.startswith("-I"):
                return flag[2:]
    except (OSError, subprocess.CalledProcessError):
        pass
    for candidate in ("/usr/include/eigen3", "/usr/local/include/eigen3"):
        if os.path.isdir(candidate):
            return candidate
    raise RuntimeError("Eigen3 headers not found; install libeigen3-dev")


sources = ["bindings/module.cpp"] + sorted(
    os.path.join("src", name) for name in os.listdir("src") if name.endswith(".cpp")
)

ext = Pybind11Extension(
    "aldc._core",
    sources=sources,
    include_dirs=["include", "vendor", eigen_include()],
    cxx_std=20,
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
