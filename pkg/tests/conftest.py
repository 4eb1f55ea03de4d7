import random
from fractions import Fraction

import pytest

from contclust import intervals as iv
from contclust.quiver import (
    STRAIGHT_ASCENDING,
    STRAIGHT_DESCENDING,
    quiver_from_positions,
)


@pytest.fixture
def rng():
    return random.Random(20240817)


def make_quiver_fixtures():
    return {
        "straight": STRAIGHT_DESCENDING,
        "ascending": STRAIGHT_ASCENDING,
        "one_sink": quiver_from_positions([0], []),
        "five_marker": quiver_from_positions([-2, 0, 2], [-1, 1]),
        "half_bounded": quiver_from_positions([0], [3]),
    }


QUIVERS = make_quiver_fixtures()


@pytest.fixture(params=sorted(QUIVERS))
def any_quiver(request):
    return QUIVERS[request.param]


def random_interval(rng: random.Random) -> iv.IntervalIndec:
    """A random valid interval with rational endpoints (rays and the full
    line included)."""
    kind = rng.randrange(8)
    den = rng.choice([1, 2, 3, 4, 8])
    a = Fraction(rng.randrange(-24, 24), den)
    b = a + Fraction(rng.randrange(0, 24), rng.choice([1, 2, 3, 4]))
    if kind == 0:
        return iv.singleton(a)
    if kind == 1:
        return iv.left_ray(a, rng.random() < 0.5)
    if kind == 2:
        return iv.right_ray(a, rng.random() < 0.5)
    if kind == 3:
        return iv.whole_line()
    if a == b:
        return iv.singleton(a)
    return iv.interval(a, rng.random() < 0.5, b, rng.random() < 0.5)
