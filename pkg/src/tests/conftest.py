"""
pytest configuration and shared fixtures
"""

import pytest

from catforge import corpus
from catforge.fincat import arrow_category, discrete_category, terminal
from catforge.strictifier import Window, strictify_total


@pytest.fixture(autouse=True)
def clear_bounds_env(monkeypatch):
    """Keep CATFORGE_BOUNDS from leaking into tests"""
    monkeypatch.delenv("CATFORGE_BOUNDS", raising=False)


@pytest.fixture
def terminal_category():
    """The one-object, one-morphism category"""
    return terminal()


@pytest.fixture
def z2_group():
    """Z/2 as a one-object category with morphisms e, u"""
    return corpus.z2_group()


@pytest.fixture
def arrow():
    """a --f--> b"""
    return arrow_category()


@pytest.fixture
def three_points():
    """Discrete category on three objects"""
    return discrete_category(["p", "q", "r"])


@pytest.fixture
def z2_monoid():
    """Discrete permutative category of ({0,1}, xor)"""
    return corpus.cyclic_monoid(2)


@pytest.fixture
def z3_monoid():
    """Discrete permutative category of ({0,1,2}, + mod 3)"""
    return corpus.cyclic_monoid(3)


@pytest.fixture
def or_monoid():
    """Discrete permutative category of ({0,1}, or)"""
    return corpus.boolean_monoid("or")


@pytest.fixture
def z2_rig():
    """Z/2 with xor and and"""
    return corpus.z2_rig()


@pytest.fixture
def boolean_rig():
    """{0,1} with or and and"""
    return corpus.boolean_rig()


@pytest.fixture
def z2_fibered():
    """Z/2 rig as fibered symmetric bimonoidal data over a point"""
    return corpus.z2_fibered()


@pytest.fixture(scope="session")
def z2_strict():
    """Strictification of the Z/2 rig over a point (small window)"""
    return strictify_total(corpus.z2_fibered(), Window(seq=2, summands=2))
