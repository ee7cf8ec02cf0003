import random
from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from roughideal.generators import (
    eventually_periodic, piecewise_constant_radius, rational, random_ball_scenario,
    stream_mixture,
)

seeds = st.integers(0, 100_000)


@given(seeds)
def test_rational_in_range(seed):
    v = rational(random.Random(seed), Fraction(-2), Fraction(2))
    assert -2 <= v <= 2 and v.denominator in (1, 2, 3, 4, 5, 8)


@given(seeds)
def test_eventually_periodic_shape(seed):
    x = eventually_periodic(random.Random(seed))
    vals = set(x.prefix(100))
    assert len(vals) <= 5
    assert all(-2 <= v <= 2 for v in vals)


@given(seeds)
def test_radius_shape(seed):
    r = piecewise_constant_radius(random.Random(seed))
    assert 1 <= len(r.pieces) <= 4
    assert all(p.beta == 0 and p.gamma == 0 and 0 <= p.alpha <= 1 for p in r.pieces)


@given(seeds)
def test_generators_are_deterministic(seed):
    a = random_ball_scenario(random.Random(seed))
    b = random_ball_scenario(random.Random(seed))
    assert a == b
    assert stream_mixture(random.Random(seed)) == stream_mixture(random.Random(seed))
