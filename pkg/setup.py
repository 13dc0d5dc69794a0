from setuptools import setup

setup(name='dimcert',
      version='0.1.0',
      description='Device-independent lower bounds on the Hilbert space dimension behind prepare-and-measure and Bell '
                  'correlations',
      author='The dimcert developers',
      license='Apache License Version 2.0, January 2004',
      packages=['dimcert', 'dimcert.correlations', 'dimcert.bounds', 'dimcert.realization', 'dimcert.transforms',
                'dimcert.dataloading', 'dimcert.tests'],
      python_requires='>=3.6',
      install_requires=[
            "numpy>=1.17",
            "scipy>=1.1",
      ],
      entry_points={
          'console_scripts': ['dimcert = dimcert.cli:console_entry'],
      },
      classifiers=[
          'Development Status :: 3 - Alpha',
          'Intended Audience :: Science/Research',
          'Topic :: Scientific/Engineering :: Physics',
          'License :: OSI Approved :: Apache Software License',
          'Programming Language :: Python :: 3',
      ],
      keywords=['quantum information', 'dimension witness', 'prepare and measure', 'bell inequalities',
                'random access codes', 'fidelity'],
      )
