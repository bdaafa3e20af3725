#!/usr/bin/env python
# coding=utf-8
import os

from setuptools import setup, find_packages


def read(fname):
    return open(os.path.join(os.path.dirname(__file__), fname)).read()


setup(name='thinfilm',
      version="0.1.0",
      description='Sixth-order thin-film solver and weak-form residual harness for thin '
                  'fluid-structure interaction',
      packages=find_packages(exclude=['tests', 'tests.*']),
      long_description=read('README.rst'),
      keywords=['thin film', 'lubrication', 'fluid-structure interaction', 'spectral methods'],
      classifiers=[
          "Development Status :: 3 - Alpha",
          'Intended Audience :: Science/Research',
          'Natural Language :: English',
          'Operating System :: Unix',
          'Programming Language :: Python :: 3',
          'Topic :: Scientific/Engineering :: Physics'
      ],
      python_requires='>=3.10',
      include_package_data=True,
      package_data={'thinfilm': ['data/configs/*.ini']},
      install_requires=[
          'numpy>=1.22',
          'scipy>=1.12',
          'scikit-learn>=1.1',
          'pandas>=1.4',
          'joblib>=1.1',
          'sympy>=1.10'
      ],
      tests_require=[
          'pytest',
      ],
      extras_require={
          'tests': ['pytest'],
          'docs': ['sphinx', 'numpydoc', 'sphinx_rtd_theme'],
      },
      entry_points={
          'console_scripts': ['thinfilm=thinfilm.cli.main:main'],
      }
      )
