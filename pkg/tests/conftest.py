import warnings

import pytest


@pytest.fixture(autouse=True)
def no_stray_warnings():
    """Duplicate-rule warnings are opt-in per test, never background noise."""
    with warnings.catch_warnings():
        warnings.simplefilter("error", UserWarning)
        yield
