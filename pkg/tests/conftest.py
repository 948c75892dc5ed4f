import pytest

from acblie import random_lie_algebra


@pytest.fixture(scope="session")
def random_algebras():
    return [random_lie_algebra(s) for s in range(12)]
