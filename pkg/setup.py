import setuptools

with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

setuptools.setup(
    name="unruh-gas",
    version="0.1.0",
    author="Edan Meyer",
    author_email="N/A",
    description="Vacuum-radiation momentum diffusion in colliding gases, with a hard-sphere chaos testbed",
    long_description=long_description,
    long_description_content_type="text/markdown",
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
    ],
    package_dir={"": "src"},
    packages=setuptools.find_packages(where="src"),
    python_requires=">=3.7",
    install_requires=[
        "numpy>=1.21",
        "scipy>=1.7",
        "pandas>=1.3",
        "wandb>=0.12",
        "tqdm>=4.62",
    ],
    extras_require={"test": ["pytest>=6.2", "PyYAML>=5.4"]},
    entry_points={
        "console_scripts": ["unruh-gas=unruh_gas.experiments.cli:main"],
    },
)
