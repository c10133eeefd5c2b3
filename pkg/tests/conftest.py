import pytest

from fpp_certifier import golden


@pytest.fixture(scope="session")
def ref():
    return golden.load()
