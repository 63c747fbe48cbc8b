#!/usr/bin/env python

from setuptools import setup, find_packages

with open('README.rst') as readme_file:
    readme = readme_file.read()

with open('HISTORY.rst') as history_file:
    history = history_file.read()

long_description = readme + '\n\n' + history

install_requires = [
    'attrs>=17.4.0',
    'beautifulsoup4>=4.6.0',
    'joblib>=0.12',
    'lxml>=4.2.0',
    'numpy>=1.14',
    'regex>=2018.1.10',
    'scipy>=1.0',
    'tqdm>=4.23',
]

tests_require = [
    'tox>=2.3.1',
    'coverage>=4.1',
    'flake8>=2.6.0',
    'pytest>=3.6',
    'pytest-cov',
    'pytest-mock',
]

dev_require = [
    'ipdb',
    'ipython',
]

docs_require = [
    'Sphinx>=1.4.4',
    'sphinx-autobuild',
    'sphinxcontrib-napoleon>=0.4.4',
    'sphinx_rtd_theme',
]

setup(
    name='sciparallel',
    version='0.1.0',
    description="Sentence-aligned parallel corpora from multilingual "
                "scientific articles",
    long_description=long_description,
    author="sciparallel developers",
    author_email='dev@sciparallel.org',
    packages=find_packages(exclude=['tests*']),
    include_package_data=True,
    package_data={'sciparallel': ['data/abbreviations/*.txt',
                                  'data/seed/*.txt']},
    install_requires=install_requires,
    tests_require=tests_require,
    extras_require={
        'test': tests_require,
        'dev': dev_require + tests_require + docs_require,
        'docs': docs_require,
    },
    entry_points={
        'console_scripts': ['sciparallel=sciparallel.cli:main'],
    },
    test_suite='tests',
    license="Apache Software License 2.0",
    keywords='parallel corpus, sentence alignment, machine translation',
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: Apache Software License',
        'Natural Language :: English',
        'Natural Language :: Portuguese',
        'Natural Language :: Spanish',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.5',
        'Programming Language :: Python :: 3.6',
        'Topic :: Text Processing :: Linguistic',
    ],
)
