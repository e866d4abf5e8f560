from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from hopfiso.datum import cyclic_square_datum
from hopfiso.params import ParamFamily

settings.register_profile("repo", deadline=None, max_examples=60, derandomize=True,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.fixture(scope="session")
def square():
    return cyclic_square_datum()


@pytest.fixture(scope="session")
def square_mu(square):
    return ParamFamily(2, square.ctx, {(1, 2): 1, (2, 3): 1})
