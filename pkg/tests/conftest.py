"""Shared fixtures: a few truncation sizes reused across the suite."""

import pytest

from susyrabi.fock import FockParams

OMEGA = 6.2832


@pytest.fixture(scope="session")
def fp_small():
    return FockParams(n_fock=32, buffer=8)


@pytest.fixture(scope="session")
def fp_mid():
    return FockParams(n_fock=128, buffer=32)


@pytest.fixture(scope="session")
def fp_default():
    return FockParams(n_fock=256, buffer=64)
