import random
from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from roughideal.distance import distance_sequence, lambda_via_distance
from roughideal.exact_sets import interval
from roughideal.generators import eventually_periodic, random_ball_scenario, stream_mixture
from roughideal.ideals import FIN, Z

seeds = st.integers(0, 100_000)


@given(seeds, st.fractions(-2, 2, max_denominator=8), st.fractions(0, 1, max_denominator=8))
def test_distance_sequence_values(seed, c, w):
    x = stream_mixture(random.Random(seed))
    A = interval(c, c + w)
    d = distance_sequence(x, A)
    for n in range(200):
        assert d.value(n) == A.distance(x.value(n))


@given(seeds)
def test_distance_verdict_matches_cycle_values(seed):
    rng = random.Random(seed)
    x, F = random_ball_scenario(rng)
    T = len([c for c in x.cells if c.index.to_text().startswith("fin")])
    cycle = set(x.prefix(T + 60)[T:])
    for I in (FIN, Z):
        for k in range(-12, 13):
            eta = Fraction(k, 4)
            v = lambda_via_distance(x, eta, F, I)
            assert v.member == any(F.at(eta).contains(c) for c in cycle)


def test_distance_sequence_of_periodic():
    x = eventually_periodic(random.Random(3))
    A = interval(0, 1)
    d = distance_sequence(x, A)
    assert [d.value(n) for n in range(30)] == [A.distance(v) for v in x.prefix(30)]
