from setuptools import find_packages, setup


with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

setup(
    name="pointsp",
    version="0.1.0",
    description="Outlier-aware point cloud sampling: filtered FPS, weighted sampling and full points resampling",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["tests", "tests.*"]),
    py_modules=["main"],
    install_requires=[
        "pydantic~=2.10.4",
        "pydantic_core>=2.27.2,<2.28.0",
        "loguru~=0.7.3",
        "numpy",
        "scipy>=1.11",
        "plyfile>=1.0",
        "tomli>=1.1.0; python_version < '3.11'",
    ],
    classifiers=[
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
    ],
    python_requires=">=3.10",
    entry_points={
        "console_scripts": [
            "pointsp=main:main",
        ],
    },
)
