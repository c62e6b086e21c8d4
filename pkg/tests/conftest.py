import os
import random

import pytest
from hypothesis import HealthCheck, settings

from cychom import lincat

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def suite():
    """20 random categories, at most 3 objects and hom dims at most 2."""
    return lincat.random_suite(20, seed=2024)


@pytest.fixture(scope="session")
def unital_suite(suite):
    return [C for C in suite if C.unital]


def small_random(seed, **kw):
    return lincat.random_category(random.Random(seed), **kw)
