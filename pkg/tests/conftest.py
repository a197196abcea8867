import pytest

from helpers import load


@pytest.fixture(scope="session")
def coffee():
    return load("coffee.aut")


@pytest.fixture(scope="session")
def coffee_i1():
    return load("coffee_i1.aut")


@pytest.fixture(scope="session")
def coffee_i2():
    return load("coffee_i2.aut")


@pytest.fixture(scope="session")
def coffee_moore():
    return load("coffee_moore.aut")


@pytest.fixture(scope="session")
def coffee_mealy():
    return load("coffee_mealy.aut")


@pytest.fixture(scope="session")
def binary_wa():
    return load("binary_value.wa")


@pytest.fixture(scope="session")
def binary_wa_faulty():
    return load("binary_value_faulty.wa")


@pytest.fixture(scope="session")
def same_twice():
    return load("same_twice.rna")
