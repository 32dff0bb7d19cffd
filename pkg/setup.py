"""Setup configuration for the fibrantkit package."""

from setuptools import setup, find_packages

setup(
    name="fibrantkit",
    version="1.0.0",
    description="Finite categories of fibrant objects: zigzags, cocycles, homotopy colimits and mechanical theorem checks",
    author="blue-penguin-123",
    packages=find_packages(include=["fibrantkit", "fibrantkit.*"]),
    package_data={"fibrantkit": ["data/*.fix"]},
    python_requires=">=3.10",
    install_requires=[
        "pydantic>=2.0",
        "sympy>=1.12",
    ],
    extras_require={
        "test": ["pytest>=7.0", "hypothesis>=6.0"],
    },
    entry_points={
        "console_scripts": ["fibrantkit=fibrantkit.cli:main"],
    },
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
    ],
)
