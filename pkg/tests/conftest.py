import random

import pytest
from hypothesis import settings

from sl8hecke.residue import make_field
from sl8hecke.tower import Tower

settings.register_profile("suite", max_examples=40, deadline=None)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def field5():
    return make_field(5)


@pytest.fixture(scope="session")
def field13():
    return make_field(13)


@pytest.fixture(scope="session")
def tower5(field5):
    return Tower(field5, precision=40)


@pytest.fixture(scope="session")
def tower13(field13):
    return Tower(field13, precision=40)


@pytest.fixture(scope="session")
def tower9():
    return Tower(make_field(9), precision=40)


@pytest.fixture()
def rng():
    return random.Random(20240817)
