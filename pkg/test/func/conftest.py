"""
Fixtures for marginal functional tests.
"""
from pathlib import Path

import pytest

from test import DATA_DIR


@pytest.fixture()
def any_invalid_directory_path():
    """Invalid directory."""
    return Path("this/is/not/a/real/path")


@pytest.fixture()
def any_invalid_file_path(any_invalid_directory_path):
    """Invalid file."""
    return any_invalid_directory_path / "i-am-not-a-real-file.circ"


@pytest.fixture(scope="session")
def example_path():
    from marginal.core import paths

    return paths.EXAMPLE_CIRCUIT_PATH


@pytest.fixture(scope="session")
def xor_path():
    """Path to an XOR formula in the test data directory, by file name."""

    def _path(name: str) -> Path:
        return DATA_DIR / "xorcsp" / name

    return _path
