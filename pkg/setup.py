from setuptools import find_packages, setup

setup(
  name='hpbench',
  packages=find_packages(exclude=['tests', 'tests.*']),
  package_data={'hpbench': ['data/buildings/*.json',
                            'data/experiments/*.json']},
  version='0.1.0',
  license='MIT',
  description='Heat-pump control workbench: building simulation, MPC and '
              'constrained soft actor-critic',
  keywords=['python', 'heat pump', 'building simulation',
            'reinforcement learning', 'model predictive control'],
  install_requires=[
        'matplotlib',
        'mpl-format',
        'numba',
        'numpy',
        'pandas',
        'scipy',
        'seaborn',
        'setuptools',
        'tqdm'
      ],
  entry_points={
    'console_scripts': ['hpbench = hpbench.harness.cli:main'],
  },
  classifiers=[
    'Development Status :: 3 - Alpha',
    'Intended Audience :: Science/Research',
    'License :: OSI Approved :: MIT License',
    'Programming Language :: Python :: 3',
  ],
)
