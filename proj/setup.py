# CMake-driven build of the _gavclab extension (classic setuptools pattern,
# used because this environment has no scikit-build-core).

import os
import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        out = Path(self.get_ext_fullpath(ext.name)).resolve().parent
        out.mkdir(parents=True, exist_ok=True)
        src = Path(__file__).resolve().parent
        build_dir = Path(self.build_temp).resolve() / "cmake"
        build_dir.mkdir(parents=True, exist_ok=True)
        cfg = "Debug" if self.debug else "Release"
        args = [
            f"-DCMAKE_BUILD_TYPE={cfg}",
            f"-DPython3_EXECUTABLE={sys.executable}",
            "-DGAVC_BUILD_PYTHON=ON",
            "-DGAVC_BUILD_TESTS=OFF",
            f"-DGAVC_EXT_OUTPUT_DIR={out}",
        ]
        env = os.environ.copy()
        subprocess.run(["cmake", "-S", str(src), "-B", str(build_dir)] + args,
                       check=True, env=env)
        subprocess.run(["cmake", "--build", str(build_dir), "--target", "_gavclab",
                        "-j", str(os.cpu_count() or 1)], check=True, env=env)


setup(
    ext_modules=[CMakeExtension("_gavclab")],
    cmdclass={"build_ext": CMakeBuild},
)
