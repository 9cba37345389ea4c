"""Shared fixtures: the small seeds every suite file works over."""

import pytest

from qcluster.scenarios import markov_seed, standard_cycle_seed
from qcluster.seeds import make_seed


@pytest.fixture
def a2():
    return make_seed([[0, 1], [-1, 0]], label="a2")


@pytest.fixture
def a3():
    return make_seed([[0, 1, 0], [-1, 0, 1], [0, -1, 0]], label="a3")


@pytest.fixture
def b2():
    # skew-symmetrizable: multipliers (1, 2), pairing matrix [[0, 1], [-2, 0]]
    return make_seed([[0, 1], [-1, 0]], d=(1, 2), label="b2")


@pytest.fixture
def cycle():
    return standard_cycle_seed()


@pytest.fixture
def markov():
    return markov_seed()


@pytest.fixture
def fold_base():
    # three vertices, the outer pair swappable, only the middle one mutable
    return make_seed([[0, 1, 0], [-1, 0, -1], [0, 1, 0]], unfrozen={1})
