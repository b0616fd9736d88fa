from __future__ import annotations

from pathlib import Path

from setuptools import find_packages, setup


def read_requirements(name: str = "requirements.txt") -> list[str]:
    req = Path(__file__).parent / name
    if not req.exists():
        return []
    lines: list[str] = []
    for line in req.read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        lines.append(line)
    return lines


setup(
    name="bordered-dcs",
    version="0.1.0",
    description="Discrete conformal structures on ideally triangulated surfaces with boundary",
    long_description=(Path(__file__).parent / "README.md").read_text(encoding="utf-8"),
    long_description_content_type="text/markdown",
    python_requires=">=3.10",
    packages=find_packages(include=["bordered_dcs", "bordered_dcs.*"]),
    include_package_data=True,
    install_requires=read_requirements(),
    extras_require={"test": read_requirements("requirements-test.txt")},
    entry_points={
        "console_scripts": [
            "bordered-dcs=bordered_dcs.reporting.cli:main",
        ]
    },
)
