import pytest

from quantcat import Quantale, from_order, metric_line


@pytest.fixture(scope="session")
def q2():
    return Quantale.boolean()


@pytest.fixture(scope="session")
def godel3():
    return Quantale.godel(3)


@pytest.fixture(scope="session")
def lawvere():
    return Quantale.lawvere()


@pytest.fixture(scope="session")
def c2(q2):
    """The two-element chain u < v as a Boolean-quantale category."""
    return from_order(q2, ["u", "v"], [("u", "v")])


@pytest.fixture(scope="session")
def line013():
    """Symmetric Lawvere line on the points 0, 1, 3."""
    return metric_line([0, 1, 3])
