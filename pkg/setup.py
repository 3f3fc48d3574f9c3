"""
masim simulates error terms of MA(q) moving average processes and studies the distances between
their local maxima:
- Generate reproducible, seedable MA(q) streams with uniform, normal or exponential innovations.
- Detect strict local maxima on the fly and histogram the distances between consecutive peaks.
- Check the measurements against the closed-form distance PMF (d-1)/2^d, its moments and an
  independent brute-force enumeration oracle.
"""

# Adapted from: https://github.com/skypilot-org/skypilot/blob/master/sky/setup_files/setup.py

import io
import os
import re

import setuptools

ROOT_DIR = os.path.dirname(__file__)


def find_version(*filepath):
    # Extract version information from filepath
    with open(os.path.join(ROOT_DIR, *filepath)) as fp:
        version_match = re.search(
            r'^__version__ = [\'"]([^\'"]*)[\'"]', fp.read(), re.M
        )
        if version_match:
            return version_match.group(1)
        raise RuntimeError("Unable to find version string.")


install_requires = [
    "numpy",
    "pandas>=1.5",
    "pydantic",
    "pyyaml",
    "rich",
    "typer",
]

extras_require = {
    # Runs each stream as a ray task instead of a local thread
    "ray": ["ray"],
    "tests": ["pytest", "scipy"],
}

extras_require["all"] = sum(extras_require.values(), [])

long_description = ""
readme_filepath = "README.md"
if os.path.exists(readme_filepath):
    long_description = io.open(readme_filepath, "r", encoding="utf-8").read()

setuptools.setup(
    name="masim",
    version=find_version("masim", "__init__.py"),
    packages=setuptools.find_packages(exclude=["tests"]),
    license="Apache 2.0",
    readme="README.md",
    description="masim: distances between local maxima of MA(q) error terms",
    long_description=long_description,
    long_description_content_type="text/markdown",
    python_requires=">=3.8",
    install_requires=install_requires,
    extras_require=extras_require,
    entry_points={
        "console_scripts": ["masim = masim.main:app"],
    },
    include_package_data=True,
    classifiers=[
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "License :: OSI Approved :: Apache Software License",
        "Operating System :: OS Independent",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
)
