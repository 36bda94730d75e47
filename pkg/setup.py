# -*- coding: utf-8 -*-
"""Setup for the package."""

# Standard Library
import os
import re

# 3rd-party
from setuptools import find_packages
from setuptools import setup


def get_version(package):
    """Return package version as listed in `__version__` in `init.py`."""
    with open(os.path.join(package, "__init__.py")) as f:
        init_py = f.read()
    return re.search("__version__ = ['\"]([^'\"]+)['\"]", init_py).group(1)


def read(fname):
    """Read text file content and return it."""
    with open(os.path.join(os.path.dirname(__file__), fname)) as f:
        return f.read()


def requirements_as_list():  # noqa: D103
    with open("requirements.txt") as f:
        return [line for line in f.read().splitlines() if line.strip()]


version = get_version("dcamil")

setup(
    name="gaze-mil",
    version=version,
    description=(
        "Gaze-guided multiple instance learning for fundus lesion screening, with a "
        "synthetic lesion and gaze generator."
    ),
    long_description=read("readme.md"),
    long_description_content_type="text/markdown",
    classifiers=[
        "Framework :: Django",
        "Framework :: Django :: 4.2",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
    ],  # Get strings from http://pypi.python.org/pypi?%3Aaction=list_classifiers
    license="MIT",
    packages=find_packages(exclude=["tests", "*.tests"]),
    install_requires=requirements_as_list(),
    setup_requires=[],
    tests_require=["pytest", "pytest-django"],
)
