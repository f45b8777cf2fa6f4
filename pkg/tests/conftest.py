import os

import pytest
from hypothesis import HealthCheck, settings

from diffvis.counterexample import build_counterexample
from diffvis.kernel import P
from diffvis.polygon import SimplePolygon

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", deadline=None, max_examples=15,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


def poly(*pts):
    return SimplePolygon(tuple(P(*p) for p in pts))


@pytest.fixture
def square():
    return poly((0, 0), (1, 0), (1, 1), (0, 1))


@pytest.fixture
def lshape():
    return poly((0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2))


@pytest.fixture
def notched():
    """Square with a pocket that the bottom edge cannot see into."""
    return poly((0, 0), (4, 0), (4, 4), (3, 4), (3, 2), (2, 2), (2, 5), (0, 5))


@pytest.fixture(scope="session")
def construction():
    return build_counterexample()


@pytest.fixture(scope="session")
def construction_v2(construction):
    from diffvis.diffuse import compute_Vk

    return compute_Vk(construction.polygon, construction.source, 2)
