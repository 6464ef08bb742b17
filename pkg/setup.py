"""
Setup script for ncrank-certify
"""
from setuptools import setup, find_packages

with open("requirements.txt") as f:
    requirements = [line for line in f.read().splitlines() if line and not line.startswith("#")]

setup(
    name="ncrank-certify",
    version="1.0.0",
    description="Deterministic non-commutative rank computation with exact certificates",
    packages=find_packages(exclude=["tests"]),
    py_modules=["main"],
    install_requires=requirements,
    python_requires=">=3.9",
    entry_points={
        "console_scripts": [
            "ncrank=main:main",
        ],
    },
)
