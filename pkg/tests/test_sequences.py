import random
from fractions import Fraction

import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from roughideal.exact_sets import interval, points
from roughideal.generators import eventually_periodic, stream_mixture
from roughideal.ideals import FIN, Z
from roughideal.sequences import (
    EXACT, DenseCover, Natural, VanDerCorput, alternating, cluster_set, constant, geometric,
    hit_set, limit_point_set, periodic,
)

seeds = st.integers(0, 100_000)


def radical_inverse(n: int) -> Fraction:
    """Base-2 digit reflection by repeated division."""
    out, scale = Fraction(0), Fraction(1, 2)
    while n:
        n, d = divmod(n, 2)
        out += d * scale
        scale /= 2
    return out


def test_vdc_matches_radical_inverse():
    v = VanDerCorput()
    assert [v.value(n) for n in range(200)] == [radical_inverse(n) for n in range(200)]
    assert np.allclose(v.prefix_float(200), [float(radical_inverse(n)) for n in range(200)])


def test_named_sequences_values():
    assert alternating().prefix(4) == [1, -1, 1, -1]
    assert geometric(1, Fraction(1, 2)).prefix(3) == [1, Fraction(1, 2), Fraction(1, 4)]
    assert constant(Fraction(1, 4)).prefix(2) == [Fraction(1, 4)] * 2
    assert periodic([5], [0, 1]).prefix(5) == [5, 0, 1, 0, 1]


@given(seeds)
def test_prefix_float_matches_exact(seed):
    x = stream_mixture(random.Random(seed))
    assert np.allclose(x.prefix_float(300), [float(v) for v in x.prefix(300)])


@given(seeds)
def test_periodic_cluster_sets_are_cycle_values(seed):
    rng = random.Random(seed)
    x = eventually_periodic(rng)
    T = len([c for c in x.cells if c.index.to_text().startswith("fin")])
    cycle = set(x.prefix(T + 60)[T:])
    for I in (FIN, Z):
        g = cluster_set(x, I)
        assert g.exactness == EXACT
        assert g.set == points(*cycle)
        assert limit_point_set(x, I).set == points(*cycle)


@given(seeds)
def test_stream_mixture_cluster_set_is_class_limits(seed):
    x = stream_mixture(random.Random(seed))
    limits = {c.stream.a for c in x.cells}
    for I in (FIN, Z):
        assert cluster_set(x, I).set == points(*limits)


@given(seeds, st.fractions(-2, 2, max_denominator=8), st.fractions(0, 2, max_denominator=8))
def test_hit_set_matches_membership(seed, c, w):
    x = stream_mixture(random.Random(seed))
    A = interval(c, c + w, seed % 2 == 0, seed % 3 == 0)
    H = hit_set(x, A)
    for n in range(150):
        assert H.contains(n) == A.contains(x.value(n))


def test_natural_has_no_cluster_points():
    assert cluster_set(Natural(), FIN).set.is_empty()


def test_dense_cover_values_and_cluster_set():
    C = interval(0, 1) | points(2)
    x = DenseCover(C)
    assert all(C.contains(v) for v in x.prefix(500))
    assert cluster_set(x, FIN).set == C
    assert cluster_set(x, Z).set == C


def test_vdc_cluster_set():
    assert cluster_set(VanDerCorput(), Z).set == interval(0, 1)
