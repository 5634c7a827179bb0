import random

import pytest

from ncfree import DistributionSpec, NcPoly, TraceFunctional
from ncfree.scalars import Scalar
from ncfree.trace import ExplicitMoments


@pytest.fixture
def rng():
    return random.Random(20240817)


@pytest.fixture
def semi1():
    return DistributionSpec.standard_semicircular(1)


@pytest.fixture
def semi2():
    return DistributionSpec.standard_semicircular(2)


@pytest.fixture
def trace2(semi2):
    return TraceFunctional(semi2)


def bernoulli_spec(max_degree: int = 4) -> DistributionSpec:
    """Single symmetric Bernoulli variable: m_k = 0 odd, 1 even."""
    table = {(1,) * k: Scalar(0 if k % 2 else 1) for k in range(max_degree + 1)}
    return DistributionSpec(1, ExplicitMoments(table, max_degree))


def gens(n: int) -> list[NcPoly]:
    return [NcPoly.gen(n, i) for i in range(1, n + 1)]
