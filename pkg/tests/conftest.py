"""
Shared fixtures: seeded generators and the standard parameters used across modules
"""

import random
from fractions import Fraction

import numpy as np
import pytest

from ncgkit.nctorus import QuadIrr, SL2Mat


@pytest.fixture
def rng():
    return random.Random(20240607)


@pytest.fixture
def np_rng():
    return np.random.default_rng(7)


@pytest.fixture
def golden():
    """(sqrt 5 - 1) / 2."""
    return QuadIrr(-1, 1, 2, 5)


@pytest.fixture
def rm_matrix():
    return SL2Mat(4, -1, 5, -1)


@pytest.fixture
def rm_theta():
    return QuadIrr(5, -1, 10, 5)


@pytest.fixture
def rm_tau():
    return (Fraction(3, 10), Fraction(-1))


@pytest.fixture(autouse=True)
def _isolated_env(monkeypatch):
    for name in ('NCGKIT_BITS', 'NCGKIT_EPS', 'NCGKIT_TOL', 'NCGKIT_SEED', 'NCGKIT_LOG_LEVEL', 'NCGKIT_REWRITE_BUDGET'):
        monkeypatch.delenv(name, raising=False)
