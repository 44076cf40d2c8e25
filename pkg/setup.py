#!/usr/bin/env python

from setuptools import find_packages
from setuptools import setup
import shlex
import subprocess


def git_version():
    cmd = 'git log --format="%h" -n 1'
    try:
        return '0.1.0+' + subprocess.check_output(shlex.split(cmd), stderr=subprocess.DEVNULL).decode().strip()
    except (OSError, subprocess.CalledProcessError):
        return '0.1.0'


version = git_version()

setup(
    name='cjt',
    version=version,
    packages=find_packages(exclude=['tests', 'examples', 'examples.*']),
    install_requires=[
        'numpy',
        'scipy',
        'networkx>=2.2',
        'rich',
        'sympy',
        'tomli; python_version < "3.11"',
    ],
    extras_require={
        'test': ['pytest'],
    },
    entry_points={
        'console_scripts': ['cjt=cjt.cli:main'],
    },
)
