import pytest

from primdiv.quadfield import make_field


@pytest.fixture(scope="session")
def q5():
    return make_field(5)


@pytest.fixture(scope="session")
def qm5():
    return make_field(-5)
