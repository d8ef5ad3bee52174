import warnings

import pytest


@pytest.fixture(autouse=True)
def _quiet_k3_repair():
    # the K3 constructor warns about the repaired deformation monomial
    with warnings.catch_warnings():
        warnings.filterwarnings("ignore", message="deformation exponents")
        warnings.filterwarnings("ignore", message="sum of weights")
        yield
