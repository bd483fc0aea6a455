#!/usr/bin/env python

from setuptools import setup

with open("README.md") as f:
    long_description = f.read()

setup(
    name='plsigma',
    version='0.1.0',
    description=('Poisson-Lie groups from Drinfel\'d doubles, checked '
                 'numerically, and their sigma models on a lattice.'),
    long_description=long_description,
    long_description_content_type='text/markdown',
    keywords=['poisson-lie', 'lie bialgebra', 'drinfeld double',
              'sigma model', 'lattice'],
    packages=['plsigma'],
    install_requires=['numpy>=1.13', 'scipy>=1.0', 'tqdm>=4.19.5'],
    entry_points={
        # setuptools magic to make a `plsigma` binary
        'console_scripts': ['plsigma = plsigma.plsigma:main'],
    },
    classifiers=[
        'License :: OSI Approved :: MIT License',
        'Programming Language :: Python :: 3',
        'Topic :: Scientific/Engineering :: Physics',
    ],
)
