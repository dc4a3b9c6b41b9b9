from setuptools import find_packages, setup
from os import path
this_directory = path.abspath(path.dirname(__file__))
with open(path.join(this_directory, './README.md'), encoding='utf-8') as f:
    long_description = f.read()

"""
Build Info:
python3 -m build
"""

setup(
    name='topopt-mg',
    packages=find_packages(exclude=['tests', 'tests.*']),
    version='v0.1.0-beta',
    license='lgpl-3.0',
    description='Multigrid-preconditioned conjugate gradients and multi-material topology optimization on '
                'structured grids',
    long_description=long_description,
    long_description_content_type='text/markdown',
    author='topopt-mg contributors',
    entry_points={'console_scripts': ['topopt-mg = topoptmg.cli.cli:main']},
    keywords=['Topology Optimization', 'Multigrid', 'Finite Elements', 'Conjugate Gradient', 'SIMP'],
    install_requires=[
        'numpy >= 1.21.4',
        'pandas >= 1.1.5',
        'pyamg >= 4.2.3',
        'scipy >= 1.7.0',
    ],
    extras_require={
        'test': ['pytest >= 7.0'],
    },
    classifiers=[
        'Development Status :: 4 - Beta',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: GNU Lesser General Public License v3 (LGPLv3)',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
)
