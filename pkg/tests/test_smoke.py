"""Test that the package imports and exposes its entry points.

Module Information:
    - Filename: test_smoke.py
    - Module: test_smoke
    - Location: tests/
"""

import importlib

import pytest

import cubic_census

MODULES = [
    "errors",
    "utils_logger",
    "ffpoly",
    "laurent",
    "qsixth",
    "forms",
    "infinity",
    "fourier",
    "predict",
    "zeta",
    "census",
    "onelevel",
    "reports",
    "config",
    "cli",
    "main",
]


@pytest.mark.parametrize("name", MODULES)
def test_imports_work(name):
    """Every module imports and declares its exports."""
    module = importlib.import_module(f"cubic_census.{name}")
    for export in getattr(module, "__all__", []):
        assert hasattr(module, export), f"{name}.{export}"


def test_package_exports():
    """The top-level names resolve."""
    assert cubic_census.__version__
    assert all(hasattr(cubic_census, name) for name in cubic_census.__all__)


def test_predict_total_from_package():
    """A prediction runs from the package namespace."""
    assert cubic_census.predict_total(5, 4).main > 0
