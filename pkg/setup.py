#! /usr/bin/env python
"""Thermal-aware routing simulator for wireless body area networks."""

import os
import codecs

from setuptools import setup, find_packages


version_file = os.path.join("wbanroute", "_version.py")
__version__ = "0.0.0"  # initialise the variable
with open(version_file) as f:
    exec(f.read())

with open("requirements.txt") as f:
    requirements = f.read().splitlines()

DISTNAME = "wban-route"
DESCRIPTION = "Discrete-event simulator of thermal-aware routing in wireless body area networks."
with codecs.open("README.md", encoding="utf-8-sig") as f:
    LONG_DESCRIPTION = f.read()
LONG_DESCRIPTION_TYPE = "text/markdown"
LICENSE = "GNU AGPLv3"
VERSION = __version__  # type: ignore
CLASSIFIERS = [
    "Intended Audience :: Science/Research",
    "Intended Audience :: Developers",
    "License :: OSI Approved",
    "Programming Language :: Python",
    "Topic :: Scientific/Engineering",
    "Topic :: System :: Networking",
    "Operating System :: POSIX",
    "Operating System :: Unix",
    "Operating System :: MacOS",
    "Programming Language :: Python :: 3.8",
    "Programming Language :: Python :: 3.9",
    "Programming Language :: Python :: 3.10",
]
KEYWORDS = (
    "wireless body area network, routing, thermal awareness, "
    "discrete-event simulation, energy model"
)
INSTALL_REQUIRES = requirements
EXTRAS_REQUIRE = {
    "tests": ["pytest", "flake8", "mypy"],
    "doc": [
        "sphinx",
        "sphinx-issues",
        "sphinx_rtd_theme",
        "numpydoc",
    ],
}

setup(
    name=DISTNAME,
    description=DESCRIPTION,
    license=LICENSE,
    version=VERSION,
    long_description=LONG_DESCRIPTION,
    long_description_content_type=LONG_DESCRIPTION_TYPE,
    zip_safe=False,
    classifiers=CLASSIFIERS,
    packages=find_packages(exclude=["examples", "examples.*"]),
    keywords=KEYWORDS,
    install_requires=INSTALL_REQUIRES,
    extras_require=EXTRAS_REQUIRE,
    entry_points={"console_scripts": ["wban-route=wbanroute.cli.main:main"]},
)
