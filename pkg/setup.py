from os.path import dirname, realpath, exists
from setuptools import setup, find_packages
import sys


author = u"veerweave developers"
authors = [author]
description = 'Exact combinatorics of veering triangulations'
name = 'veerweave'
year = "2026"

sys.path.insert(0, realpath(dirname(__file__))+"/"+name)
from _version import version  # noqa: E402

setup(
    name=name,
    author=author,
    version=version,
    packages=find_packages(exclude=["tests"]),
    package_dir={name: name},
    include_package_data=True,
    package_data={name: ["fixtures/*.vtri", "fixtures/*.json"]},
    license="GPL v3",
    description=description,
    long_description=open('README.rst').read() if exists('README.rst') else '',
    install_requires=["networkx>=2.6,<3.4",  # weisfeiler_lehman_graph_hash rejects multigraphs from 3.4
                      "numpy>=1.21",
                      # sympy.solvers.simplex
                      "sympy>=1.12",
                      ],
    python_requires='>=3.8, <4',
    entry_points={"console_scripts": ['veerweave = veerweave.__main__:main']},
    keywords=["veering triangulation", "Thurston norm", "pseudo-Anosov flow",
              "3-manifold"],
    classifiers=['Operating System :: OS Independent',
                 'Programming Language :: Python :: 3',
                 'Intended Audience :: Science/Research',
                 'Topic :: Scientific/Engineering :: Mathematics',
                 ],
    platforms=['ALL']
)
