# -*- coding: utf-8 -*-

import random

import pytest

collect_ignore = ["__init__.py", "data"]

from test import SEED


@pytest.fixture(scope="session")
def cfg():
    """Packaged defaults, independent of any user configuration file."""
    from marginal.core import Configuration, paths

    return Configuration(profile="default", from_config=paths.DEFAULTS_PATH)


@pytest.fixture(scope="session")
def limits(cfg):
    return cfg.limits


@pytest.fixture(scope="session")
def example():
    """The three-variable example circuit shipped with the package."""
    from marginal.core import parse_circuit, paths

    return parse_circuit(paths.EXAMPLE_CIRCUIT_PATH.read_text())


@pytest.fixture(scope="session")
def example_table(example):
    from marginal.core.multilinear import table_from_circuit

    return table_from_circuit(example)


@pytest.fixture(scope="session")
def example_certificate(example):
    from marginal.core import certify

    return certify(example, mode="syntactic")


@pytest.fixture()
def rng():
    """Fresh seeded random source per test."""
    return random.Random(SEED)


@pytest.fixture(scope="session")
def random_suite(limits):
    """120 random certified circuits with n <= 8, with truth tables."""
    from marginal.core.oracle import random_cases

    return list(random_cases(120, random.Random(SEED), max_n=8, limits=limits))
