"""
Shared pytest configuration.

Hypothesis profiles: ``standard`` (default) and ``quick``; select with HYPOTHESIS_PROFILE.
"""

import os

import pytest
from hypothesis import HealthCheck, settings

from multicoh.multicat.construct import (
    assoc_operad,
    barratt_eccles,
    cyclic_monoid,
    end_of_monoid,
    terminal_operad,
    unary_monoid,
)


settings.register_profile(
    "standard", max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("quick", max_examples=20, deadline=None)
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "standard"))


@pytest.fixture(scope="session")
def comm3():
    return terminal_operad(3)


@pytest.fixture(scope="session")
def ass3():
    return assoc_operad(3)


@pytest.fixture(scope="session")
def be2():
    return barratt_eccles(2)


@pytest.fixture(scope="session")
def be3():
    return barratt_eccles(3)


@pytest.fixture(scope="session")
def z3():
    return end_of_monoid(cyclic_monoid(3), 3)


@pytest.fixture(scope="session")
def z2():
    return end_of_monoid(cyclic_monoid(2), 3)


@pytest.fixture(scope="session")
def group5():
    return unary_monoid(cyclic_monoid(5), 2)
