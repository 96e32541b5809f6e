import mpmath
import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")


@pytest.fixture(autouse=True)
def _mp_precision():
    """Every test runs at 512 bits and leaves the global mpmath context untouched."""
    with mpmath.workprec(512):
        yield
