#!/usr/bin/env python3
''' Setup.py file '''
import setuptools

setuptools.setup(name='topocharge',
                 version='0.1',
                 author='The topocharge developers',
                 description='Topological charges of the free Maxwell field',
                 license='LGPL2.1+',
                 packages=["topocharge", "topocharge.exterior",
                           "topocharge.loops", "topocharge.propagator",
                           "topocharge.charge", "topocharge.multiplet",
                           "topocharge.cli"],
                 python_requires='>=3.8',
                 install_requires=['numpy', 'scipy', 'joblib',
                                   'jsonschema'],
                 extras_require={'test': ['pytest', 'coverage', 'mypy']},
                 entry_points={
                     'console_scripts': [
                         'topocharge = topocharge.cli.main:main',
                     ]
                 },
)
