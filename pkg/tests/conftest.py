import pytest
from hypothesis import settings

import smgrow

settings.register_profile("ci", deadline=None, max_examples=60)
settings.load_profile("ci")


@pytest.fixture(scope="session")
def grig():
    return smgrow.catalog("grigorchuk")


@pytest.fixture(scope="session")
def gs3():
    return smgrow.catalog("gupta-sidki", p=3)


@pytest.fixture(scope="session")
def fg():
    return smgrow.catalog("fabrykowski-gupta")


@pytest.fixture(scope="session")
def dihedral():
    return smgrow.catalog("epsilon", d=2, eps=(1,))


@pytest.fixture(scope="session")
def square_group():
    return smgrow.catalog("square")
