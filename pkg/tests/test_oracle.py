import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from roughideal.exact_sets import hausdorff_distance, interval, points
from roughideal.generators import random_ball_scenario
from roughideal.ideals import FIN, Z
from roughideal.oracle import (
    GridPoint, OracleConfig, approx_gamma_member, cloud_hausdorff, compare, grid_set,
    grid_to_set, prefix_values,
)
from roughideal.rough_families import Degenerate
from roughideal.sequences import alternating, geometric, periodic

seeds = st.integers(0, 100_000)


def test_config_invariants():
    with pytest.raises(ValueError):
        OracleConfig(prefix=100)
    with pytest.raises(ValueError):
        OracleConfig(grid_step=Fraction(1, 3))
    with pytest.raises(ValueError):
        OracleConfig(grid_step=Fraction(1, 16))
    with pytest.raises(ValueError):
        OracleConfig(theta=1.5)
    assert OracleConfig(prefix=16, strict=False).prefix == 16


def test_prefix_values_match_sequence():
    x = geometric(3, Fraction(-1, 2))
    vals = prefix_values(x, 512)
    exact = x.prefix(40)
    assert all(abs(vals.approx[n] - float(exact[n])) < 1e-12 for n in range(40))


def test_grid_to_set_runs():
    step = Fraction(1, 4)
    grid = [GridPoint(Fraction(k, 4), k in (0, 1, 2, 5)) for k in range(8)]
    assert grid_to_set(grid, step) == interval(0, Fraction(1, 2)) | points(Fraction(5, 4))


@given(st.lists(st.fractions(-3, 3, max_denominator=16), min_size=1, max_size=12, unique=True),
       st.fractions(-3, 2, max_denominator=8), st.fractions(0, 2, max_denominator=8))
def test_cloud_hausdorff_matches_exact(cloud, a, w):
    W = interval(a, a + w) | points(Fraction(5, 2))
    got = cloud_hausdorff(sorted(cloud), W)
    assert got == pytest.approx(float(hausdorff_distance(points(*cloud), W)))


def test_compare_classifies_boundary():
    cfg = OracleConfig(grid_step=Fraction(1, 32), lo=Fraction(-1), hi=Fraction(1))
    engine = interval(0, Fraction(1, 2))
    grid = [GridPoint(g, engine.contains(g) or g == Fraction(-1, 32)) for g in cfg.grid()]
    c = compare(engine, grid, cfg)
    assert c.passed and [d.cause for d in c.discrepancies] == ["boundary"]
    bad = [GridPoint(g, engine.contains(g) or g == Fraction(-1, 2), -0.5) for g in cfg.grid()]
    c2 = compare(engine, bad, cfg)
    assert not c2.passed and c2.discrepancies[0].cause == "genuine"


def test_periodic_gamma_grid():
    x = periodic([7], [0, 1])
    cfg = OracleConfig(prefix=2048, grid_step=Fraction(1, 32), lo=Fraction(-1), hi=Fraction(2))
    pts = [g.eta for g in grid_set(x, Z, Degenerate(), "gamma", cfg) if g.member]
    assert pts == [0, 1]


@settings(max_examples=10)
@given(seeds)
def test_fin_verdicts_stable_under_doubling(seed):
    x, F = random_ball_scenario(random.Random(seed))
    c1 = OracleConfig(prefix=4096, grid_step=Fraction(1, 32))
    c2 = OracleConfig(prefix=8192, grid_step=Fraction(1, 32))
    for k in range(-8, 9):
        eta = Fraction(k, 4) + Fraction(1, 64)
        assert (approx_gamma_member(x, FIN, F, eta, c1).member
                == approx_gamma_member(x, FIN, F, eta, c2).member)


def test_alternating_fin_gamma():
    cfg = OracleConfig(prefix=1024, grid_step=Fraction(1, 32))
    assert approx_gamma_member(alternating(), FIN, Degenerate(), 1, cfg).member
    assert not approx_gamma_member(alternating(), FIN, Degenerate(), 0, cfg).member
