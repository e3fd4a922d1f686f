from setuptools import setup


with open('README.rst', encoding='utf-8') as f:
    long_description = f.read()

setup(name='varbicolib',
      version="0.1",
      description='Variational bicomplex over jet bundles and reconstruction of '
                  'Lagrangians from presymplectic currents.',
      long_description=long_description,
      author='varbicolib developer group',
      license='GPLv3',
      python_requires='>=3.9',
      packages=['varbicolib'],
      package_data={'varbicolib': ['data/*.vbc']},
      install_requires=['numpy', 'sympy', 'lark'],
      extras_require={'test': ['pytest']},
      entry_points={'console_scripts': ['varbico = varbicolib.cli:main']})
