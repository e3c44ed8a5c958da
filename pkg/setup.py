"""A setuptools based setup module.

See:
https://packaging.python.org/guides/distributing-packages-using-setuptools/
"""
from setuptools import setup, find_packages
import pathlib

here = pathlib.Path(__file__).parent.resolve()

long_description = (here / 'README.md').read_text(encoding='utf-8')

setup(
    name='gaf-disturbance-classification',
    version='0.1.0',
    description='Power-grid disturbance classification on Gramian angular '
                'field images of phasor angle series',
    long_description=long_description,
    long_description_content_type='text/markdown',
    url='https://github.com/john-james-sf/gaf-disturbance-classification',
    author='John James',
    author_email='john.james@nov8.ai',
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'Topic :: Scientific/Engineering :: Artificial Intelligence',
        'License :: OSI Approved :: BSD License',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3 :: Only',
    ],
    keywords='Gramian angular field, PMU, disturbance classification, CNN, '
             'LSTM, SVM, decision tree',
    # Modules import each other as src.*, so src itself is the top package.
    packages=find_packages(include=['src', 'src.*']),
    python_requires='>=3.8, <4',
    install_requires=['numpy>=1.20', 'pandas>=1.2', 'scikit-learn>=0.24',
                      'click>=7.1', 'matplotlib>=3.4'],
    extras_require={
        'test': ['pytest>=6.2'],
        'dev': ['flake8', 'tox'],
    },
    data_files=[('config', ['config/hyperparameters.cfg'])],
    entry_points={
        'console_scripts': [
            'gafclassify=src.main:cli',
        ],
    },
)
