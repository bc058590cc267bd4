import pytest
from hypothesis import settings

from fuzzynet import builtin_sample_kb

settings.register_profile("default", deadline=None, max_examples=100, derandomize=True)
settings.load_profile("default")


@pytest.fixture()
def sample_net():
    return builtin_sample_kb()
