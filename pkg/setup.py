import sys

from os.path import (
    abspath,
    dirname,
    join,
)
from setuptools import setup

VERSION = "0.1.0"

VERSION_SUFFIX = "%d.%d" % sys.version_info[:2]
CURRENT_DIRECTORY = abspath(dirname(__file__))


with open(join(CURRENT_DIRECTORY, "README.rst")) as readme:
    with open(join(CURRENT_DIRECTORY, "CHANGELOG.rst")) as changelog:
        long_description = "%s\n\n%s" % (readme.read(), changelog.read())


install_requires = [
    "docopt>=0.6.1,<0.7",
    "numpy>=1.17",
    "scipy>=1.6",
]
tests_require = [
    "pytest",
    "pytest-cov",
    "coverage",
]


console_script_targets = [
    "kerr-lab = kerrlab.scripts.client:main",
    "kerr-lab-{0} = kerrlab.scripts.client:main",
]
console_script_targets = [
    target.format(VERSION_SUFFIX) for target in console_script_targets
]


setup(
    name="kerrlab",
    version=VERSION,
    description="Kerr-cell quantum optics simulations on truncated Fock spaces",
    long_description=long_description,
    keywords=[
        "cat state",
        "cross-Kerr",
        "Fock space",
        "GHZ",
        "homodyne tomography",
        "quantum eraser",
        "quantum optics",
        "Wigner function",
    ],
    author="kerrlab contributors",
    license="BSD",
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: BSD License",
        "Operating System :: OS Independent",
        "Programming Language :: Python",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: Implementation :: CPython",
        "Topic :: Scientific/Engineering :: Physics",
    ],
    packages=["kerrlab", "kerrlab.scripts"],
    include_package_data=True,
    zip_safe=False,
    python_requires=">=3.8",
    install_requires=install_requires,
    tests_require=tests_require,
    extras_require={"test": tests_require},
    entry_points={
        "console_scripts": console_script_targets,
    }
)
