import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from corpus import make_e1, make_e2, make_e3, make_e4, make_e4p


@pytest.fixture
def e1():
    return make_e1()


@pytest.fixture
def e2():
    return make_e2()


@pytest.fixture
def e3():
    return make_e3()


@pytest.fixture
def e4():
    return make_e4()


@pytest.fixture
def e4p():
    return make_e4p()
