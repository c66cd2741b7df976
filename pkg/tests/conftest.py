import pytest

from hrtlab import GridSpec, make_gaussian


@pytest.fixture(scope="session")
def default_grid():
    """The reference grid every tolerance in the suite is quoted against."""
    return GridSpec(2048, 32.0)


@pytest.fixture(scope="session")
def gaussian(default_grid):
    return make_gaussian(default_grid)


@pytest.fixture(scope="session")
def small_grid():
    return GridSpec(512, 16.0)


@pytest.fixture(scope="session")
def small_gaussian(small_grid):
    return make_gaussian(small_grid)
