import pytest

from dp2count import weyl


@pytest.fixture(scope="session")
def group():
    # cached on disk after the first build
    return weyl.build_group()
