"""Setup script for editable installation."""

from setuptools import find_packages, setup

setup(
    name="channels-matching",
    version="0.1.0",
    packages=find_packages(include=["src", "src.*"]),
    install_requires=[
        # Dependencies are in requirements.txt
    ],
    entry_points={"console_scripts": ["cm-lab=src.main:run"]},
)
