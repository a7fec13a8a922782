import pytest

from core import DEFAULT_PRIME, RunConfig
from groebner import IdealPresentation
from polyring import Field, PolyRing, parse_poly


@pytest.fixture
def cfg():
    return RunConfig(time_cap=600.0)


@pytest.fixture
def prime_cfg():
    return RunConfig(field=DEFAULT_PRIME, time_cap=600.0)


@pytest.fixture
def xyz():
    return PolyRing(["x", "y", "z"])


def ideal(names, gens, weights=None, p=0):
    """Small helper: IdealPresentation from variable names and generator strings."""
    ring = PolyRing(names, weights, Field(p))
    return IdealPresentation(ring, [parse_poly(g, ring) for g in gens])


@pytest.fixture
def make_ideal():
    return ideal
