import random

import pytest

from apn_forge.field import mk_field


@pytest.fixture(scope="session")
def ctx4():
    return mk_field(4)


@pytest.fixture(scope="session")
def ctx5():
    return mk_field(5)


@pytest.fixture(scope="session")
def ctx6():
    return mk_field(6)


@pytest.fixture(scope="session")
def ctx8():
    return mk_field(8)


@pytest.fixture()
def rng():
    return random.Random(0xC0FFEE)
