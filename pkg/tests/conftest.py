import numpy as np
import pytest

from cjt.grouplat import ElabLattice, build_group
from utils.ffield import get_field


def exhaustive_elements(F):
    return list(range(F.q))


def family(name, *params):
    return build_group({"family": name, "params": list(params)})


@pytest.fixture(scope="session")
def klein4():
    return family("klein4")


@pytest.fixture(scope="session")
def klein4_lattice(klein4):
    return ElabLattice(klein4, 2)


@pytest.fixture(scope="session")
def z3_squared():
    return family("elementary_abelian", 3, 2)


@pytest.fixture(scope="session")
def z3_squared_lattice(z3_squared):
    return ElabLattice(z3_squared, 3)


@pytest.fixture(scope="session")
def heisenberg3():
    return family("heisenberg", 3)


@pytest.fixture(scope="session")
def heisenberg3_lattice(heisenberg3):
    return ElabLattice(heisenberg3, 3)


@pytest.fixture(scope="session")
def heisenberg5():
    return family("heisenberg", 5)


@pytest.fixture(scope="session")
def heisenberg5_lattice(heisenberg5):
    return ElabLattice(heisenberg5, 5)


@pytest.fixture(scope="session")
def symmetric3():
    return family("symmetric", 3)


@pytest.fixture
def rng():
    return np.random.default_rng(0)


@pytest.fixture
def field():
    return get_field
