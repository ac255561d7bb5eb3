"""
Setup configuration for the Admissible Cubes Python library.
"""

from setuptools import setup, find_packages

with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

setup(
    name="admissible-cubes",
    version="0.1.0",
    description="Exact checks on cubes of modules, cube adjugates, lattices and free complexes",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["tests*", "examples*"]),
    package_data={"admissible_cubes": ["py.typed"]},
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Topic :: Software Development :: Libraries :: Python Modules",
    ],
    python_requires=">=3.8",
    install_requires=[
        "sympy>=1.9",
    ],
    extras_require={
        "dev": [
            "pytest>=6.0",
            "pytest-cov",
            "hypothesis>=6.0",
            "black",
            "flake8",
            "mypy",
            "twine",
            "build",
        ],
    },
    entry_points={
        "console_scripts": [
            "admissible-cubes=admissible_cubes.cli:main",
        ],
    },
    keywords="commutative algebra homological algebra koszul smith normal form lattice",
)
