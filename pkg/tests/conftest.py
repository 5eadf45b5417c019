import pytest

from fran_dtb.ldm import make_channel


@pytest.fixture
def ex1():
    return make_channel(2, 5, 4)


@pytest.fixture
def ex2():
    return make_channel(2, 5, 6)
