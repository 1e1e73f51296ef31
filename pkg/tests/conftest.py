"""
Fixtures compartidos: cuerpos, grupos y parametros del ejemplo (p, q) = (2, 3)
"""
import numpy as np
import pytest

from vallab.core.coefficients import get_field
from vallab.core.exponents import gamma_group, residue_extended, tower_group
from vallab.modules.construction.witness import WConstructionParams


@pytest.fixture
def f2():
    return get_field(2)


@pytest.fixture
def f3():
    return get_field(3)


@pytest.fixture
def f4():
    return get_field(2, 2)


@pytest.fixture
def gamma2():
    return gamma_group(2)


@pytest.fixture
def gamma3():
    return gamma_group(3)


@pytest.fixture
def gamma2_prime():
    return residue_extended(2)


@pytest.fixture
def tower2():
    return tower_group(2)


@pytest.fixture
def params23():
    return WConstructionParams(p=2, q=3, depth=5)


@pytest.fixture
def params32():
    return WConstructionParams(p=3, q=2, depth=5)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
