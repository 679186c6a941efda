"""
Small circuits shared by the unit tests.
"""

import pytest

from test import circuit


@pytest.fixture(scope="session")
def identity():
    """``x1``."""
    return circuit("identity.circ")


@pytest.fixture(scope="session")
def square():
    """``x1 * x1``; not multilinear."""
    return circuit("square.circ")


@pytest.fixture(scope="session")
def cancellation():
    """``x1 x2 x1 - x1 x2 x1 + x1``; multilinear, but fails the syntactic check."""
    return circuit("cancellation.circ")
