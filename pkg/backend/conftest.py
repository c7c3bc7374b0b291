import math

import pytest

from extension.params import validate_extension


@pytest.fixture
def identity_params():
    return validate_extension(1, 0, 1, 0, 0)


@pytest.fixture
def delta_params():
    """Attractive delta interaction with c0 = 1."""
    return validate_extension(1, -2, 1, 0, 0)


@pytest.fixture
def odd_mixing_params():
    """Time-reversal-even, parity-violating interaction with one bound state at kappa = 1."""
    return validate_extension(2, -2.5, 0.5, 0, 0)


@pytest.fixture
def parity_even_params():
    return validate_extension(0, 1, 0, -1, 0)


@pytest.fixture
def maximal_tv_params():
    return validate_extension(1, 0, 1, 1, math.pi / 2)
