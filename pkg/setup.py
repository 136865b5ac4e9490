# -------------------------------------------------------------------------------------------------
# Copyright (c) 2026, the slcpy developers.
# This file is part of slcpy: numerical tools for the symmetric Liapunov center theorem on
# minimal orbits of planar N-body potentials.
#
# Distributed under the BSD 3-Clause License.
# -------------------------------------------------------------------------------------------------

from setuptools import setup
import re


with open("README.md", "r") as infile:
    longdesc = infile.read()
with open("slcpy/__init__.py", "r") as infile:
    version = re.search(r'__version__ = "([^"]+)"', infile.read()).group(1)

setup(
    name="slcpy",
    version=version,
    description="slcpy: symmetric Liapunov center theorem tools for planar N-body potentials",
    long_description=longdesc,
    long_description_content_type="text/markdown",
    packages=["slcpy", "slcpy.tests"],
    package_data={"slcpy": ["tests/data/*"]},
    include_package_data=True,
    install_requires=[
        "black==24.3",
        "numpy>=1.24",
        "pandas>=2.0",
        "pytest>=6.0",
        "pytest-cov>=3.0",
        "scipy>=1.10",
        "tabulate>=0.9",
        "tqdm>=3.0",
    ],
    entry_points={"console_scripts": ["slcpy = slcpy:main"]},
    classifiers=[
        "Environment :: Console",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: BSD License",
        "Programming Language :: Python :: 3",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Topic :: Scientific/Engineering :: Physics",
    ],
    zip_safe=True,
)
