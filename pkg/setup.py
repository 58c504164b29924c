from setuptools import setup, find_packages

modules = ["weyl_moe." + p for p in sorted(find_packages("./weyl_moe"))]

vsn = {}
with open("./weyl_moe/__meta__.py") as fp:
    exec(fp.read(), vsn)
__version__ = vsn["__version__"]

setup(
    name="weyl-moe",
    version=__version__,
    description="Covariant Weyl channels on qudits and numerical checks of their minimal output entropy",
    long_description=open("./README.md").read(),
    long_description_content_type="text/markdown",
    license="MIT",
    keywords=["quantum channels", "minimal output entropy", "additivity", "weyl"],
    entry_points={"console_scripts": ["weyl-moe=weyl_moe.cli:process_args"]},
    install_requires=[
        "janis-pipelines.core>=0.9.17",
        "tabulate",
        "ruamel.yaml >= 0.12.4, <= 0.16",
        "numpy>=1.17",
        "scipy>=1.4",
    ],
    packages=["weyl_moe"] + modules,
    classifiers=[
        "Development Status :: 4 - Beta",
        "Topic :: Scientific/Engineering :: Physics",
        "Intended Audience :: Science/Research",
        "Environment :: Console",
    ],
)
