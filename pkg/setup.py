#!/usr/bin/env python3
# Copyright (c) jordannorm authors. All Rights Reserved.

from setuptools import find_packages, setup

setup(
    name="jordannorm",
    version="1.0",
    author="jordannorm authors",
    url="unknown",
    description="Jordan-Stinespring factorizations of bilinear forms on "
    "finite dimensional C*-algebras",
    install_requires=[
        "numpy",
        "scipy>=1.7",
        "fvcore",
        "yacs>=0.1.6",
        "pyyaml>=5.1",
        "simplejson",
        "tqdm",
        "pandas",
    ],
    extras_require={"test": ["pytest", "hypothesis"]},
    entry_points={
        "console_scripts": ["jordannorm=jordannorm.tools.run_cli:main"]
    },
    packages=find_packages(exclude=("configs", "tests")),
)
