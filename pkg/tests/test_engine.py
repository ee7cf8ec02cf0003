import random
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from roughideal.engine import (
    EXACT, compute_all, gamma_rough, inner_cluster_set, lambda_rough, lim_rough,
    lim_star_rough, m_functions, same_set, separating_witness,
)
from roughideal.exact_sets import interval, naturals, points, tail
from roughideal.generators import piecewise_constant_radius, random_ball_scenario, stream_mixture
from roughideal.ideals import FIN, FINXFIN, IN, Z
from roughideal.piecewise import RadiusFunction, negative_example_radius
from roughideal.rough_families import (
    Ball, Degenerate, ModelFamily, Table, example21_family, f_prime_family,
)
from roughideal.sequences import alternating, constant, fubini, geometric, Natural

seeds = st.integers(0, 100_000)
GRID = [Fraction(k, 8) for k in range(-28, 29)]
X_MODEL = tail(1, Fraction(1, 2), closed=True)


def limit_values(x):
    """Limits of the per-class streams, read off the cells."""
    return {c.stream.a for c in x.cells}


def cycle_values(x):
    T = len([c for c in x.cells if c.index.to_text().startswith("fin")])
    return set(x.prefix(T + 60)[T:])


# -- worked examples --------------------------------------------------------------------

def test_example21_triple():
    x, F = geometric(1, Fraction(1, 2)), example21_family()
    assert inner_cluster_set(x, FIN, F) == points(0)
    g = gamma_rough(x, FIN, F)
    assert g.grade == EXACT and g.set == points(0, 1)
    assert inner_cluster_set(x, FIN, F, closure=True) == points(0, Fraction(1, 3), 1)


def test_alternating_counterexamples():
    g = gamma_rough(alternating(), FIN, Ball(RadiusFunction.constant(3), closed=False))
    assert g.set == interval(-4, 4, False, False)
    g2 = gamma_rough(alternating(), FIN, f_prime_family())
    assert g2.set == interval(-2, 2, False, False)
    assert lim_rough(alternating(), FIN, f_prime_family()).set == points(-1)


def test_negative_example_zero_and_epsilon():
    F = Ball(negative_example_radius())
    assert gamma_rough(constant(0), FIN, F).set == points(0)
    assert lim_rough(constant(0), FIN, F).set == points(0)
    for t in (1, 3, 6):
        eps = Fraction(1, 2**t)
        y = constant(eps / 2)
        eta = 2 / eps
        assert lim_rough(y, FIN, F).set.contains(eta)
        assert m_functions(y, FIN, F).m_tilde(eta) == 0


def test_fubini_sets():
    rep = compute_all(fubini(), FINXFIN, ModelFamily())
    for k in ("lim", "gamma", "lambda"):
        assert rep[k].grade == EXACT and same_set(rep[k].set, X_MODEL)
    assert rep["limstar"].set.is_empty()
    deg = compute_all(fubini(), FINXFIN, Degenerate())
    assert deg["lim"].set == points(0) and deg["limstar"].set.is_empty()


def test_natural_with_lattice_member():
    F = Table(((Fraction(0), naturals(0)),))
    rep = compute_all(Natural(), FIN, F)
    for k in ("lim", "limstar", "gamma", "lambda"):
        assert rep[k].set == points(0)


# -- brute-force oracles on random scenarios ----------------------------------------------

@settings(max_examples=25)
@given(seeds)
def test_periodic_ball_sets_match_brute_force(seed):
    x, F = random_ball_scenario(random.Random(seed))
    vals = cycle_values(x)
    for I in (FIN, Z):
        rep = compute_all(x, I, F)
        for r in rep.values():
            assert r.grade == EXACT
        for eta in GRID:
            A = F.at(eta)
            meets = any(A.contains(v) for v in vals)
            covers = all(A.contains(v) for v in vals)
            assert rep["gamma"].set.contains(eta) == meets
            assert rep["lambda"].set.contains(eta) == meets
            assert rep["lim"].set.contains(eta) == covers
            assert rep["limstar"].set.contains(eta) == covers


@settings(max_examples=20)
@given(seeds)
def test_stream_mixture_sets_match_brute_force(seed):
    rng = random.Random(seed)
    x = stream_mixture(rng)
    F = Ball(piecewise_constant_radius(rng), closed=True)
    lims = limit_values(x)
    for I in (FIN, Z):
        g, lam, lim = gamma_rough(x, I, F), lambda_rough(x, I, F), lim_rough(x, I, F)
        for eta in GRID:
            A = F.at(eta)
            meets = any(A.contains(a) for a in lims)
            assert g.set.contains(eta) == meets
            assert lam.set.contains(eta) == meets
            assert lim.set.contains(eta) == all(A.contains(a) for a in lims)


@settings(max_examples=20)
@given(seeds)
def test_inclusion_chains(seed):
    rng = random.Random(seed)
    x = stream_mixture(rng) if rng.random() < 0.5 else random_ball_scenario(rng)[0]
    F = Ball(piecewise_constant_radius(rng), closed=rng.random() < 0.7)
    for I in (FIN, Z):
        rep = compute_all(x, I, F)
        ls, lam, lim, g = rep["limstar"], rep["lambda"], rep["lim"], rep["gamma"]
        assert ls.inner.subset_of(lam.outer) and lam.inner.subset_of(g.outer)
        assert ls.inner.subset_of(lim.outer) and lim.inner.subset_of(g.outer)
        # sandwich: F_eta meeting Gamma_x(I) gives a lower bound for Gamma
        assert inner_cluster_set(x, I, F).subset_of(g.outer)


def test_lim_star_equals_lim_for_fin():
    x, F = random_ball_scenario(random.Random(11))
    assert same_set(lim_star_rough(x, FIN, F).set, lim_rough(x, FIN, F).set)


def test_separating_witness_hit_set_in_ideal():
    x = geometric(1, Fraction(1, 2))
    w = separating_witness(x, FIN, Fraction(5), points(5))
    assert w is not None and w.status == IN
    assert w.U.contains(5)
