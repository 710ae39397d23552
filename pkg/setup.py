from setuptools import setup, find_packages

setup(
    name="sourcelab",
    version="0.1.0",
    install_requires=[
        "addict>=2.1.1, <3.0.0",
        "numpy>=1.17",
        "scipy>=1.3",
        "pyyaml",
        "cdiserrors",
        "cdislogging",
    ],
    scripts=["bin/sourcelab"],
    packages=find_packages(exclude=["tests", "tests.*"]),
)
