# -*- coding: utf-8 -*-

# All metadata lives in pyproject.toml; this shim keeps "pip install -e ."
# working with older setuptools.
from setuptools import setup

setup(
    zip_safe=False,
)
