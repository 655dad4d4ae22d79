import setuptools
import subprocess

def get_git_tag():
    try:
        return subprocess.check_output(["git", "describe", "--tags", "--abbrev=0"]).decode().strip()
    except Exception:
        return "0.0.0"

with open("README.md", "r") as fh:
    long_description = fh.read()

setuptools.setup(
    name="multicut-lab",
    version=get_git_tag(),
    description="Exact minimum multicut solver and facet laboratory for the multicut dominant",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=setuptools.find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
    python_requires=">=3.8",
    install_requires=[
        "networkx>=2.6",
        "sympy>=1.9",
    ],
    entry_points={
        "console_scripts": ["multicut-lab = multicutlab.cli:main"],
    },
    test_suite='tests',
    classifiers=[
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11',
        "License :: OSI Approved :: MIT License",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
)
