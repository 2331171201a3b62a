"""Shared fixtures: default evaluation config, the zero table on [10, 100] and a von Mangoldt table."""

import pytest

from src.arithmetic import lambda_sieve
from src.config import EvalConfig
from src.zero_locator import find_zeros


@pytest.fixture(scope="session")
def cfg():
    return EvalConfig()


@pytest.fixture(scope="session")
def zeros_10_100(cfg):
    return find_zeros(10.0, 100.0, cfg)


@pytest.fixture(scope="session")
def lam():
    return lambda_sieve(10 ** 6)
