import math

import pytest

from unionpath.geometry import (
    GeneratorSpec,
    chain_instance,
    generate_instance,
    iso_instance,
    nest_instance,
    pair_instance,
    triangle_instance,
)

INF = math.inf


@pytest.fixture
def pair():
    return pair_instance()


@pytest.fixture
def nest():
    return nest_instance()


@pytest.fixture
def iso():
    return iso_instance()


@pytest.fixture
def triangle():
    return triangle_instance()


def random_instance(family, n, seed, **kw):
    return generate_instance(GeneratorSpec(family=family, n=n, seed=seed, **kw))
