#!/usr/bin/env python
# -*- coding: utf-8 -*-

import os
from setuptools import setup
from freelp.__version__ import __VERSION__

def read(fname):
    return open(os.path.join(os.path.dirname(__file__), fname)).read()


setup(name='freelp',
      version=__VERSION__,
      description='Khintchine-type inequalities for free group polynomials with matrix coefficients',
      license='AFL3',
      packages=['freelp',
                'freelp.optim',
                'freelp.utils',
                'freelp.verify'],
      package_dir={'freelp': 'freelp'},
      long_description=read('README.md'),
      long_description_content_type='text/markdown',
      python_requires='>=3.6',
      install_requires=['numpy>=1.15', 'scipy>=1.3', 'tables', 'mpi4py'],
      extras_require={'test': ['pytest']},
      entry_points={'console_scripts': ['freelp=freelp.cli:main']},
      classifiers=['License :: OSI Approved :: Academic Free License (AFL)',
                   'Natural Language :: English',
                   'Operating System :: MacOS :: MacOS X',
                   'Operating System :: POSIX :: Linux',
                   'Programming Language :: Python :: 3',
                   'Topic :: Scientific/Engineering :: Mathematics'],
      command_options={
        'build_sphinx': {
            'project': ('setup.py', 'freelp'),
            'version': ('setup.py', __VERSION__),
            'release': ('setup.py', __VERSION__),
            'source_dir': ('setup.py', 'docs')}}
)
