import random
from fractions import Fraction

import pytest

from roughideal.constructions import (
    CONSTRUCTIONS, closure_approximation, cluster_family_instance, non_uc_counterexample,
    p_plus_counterexample, run_construction,
)
from roughideal.engine import lim_rough
from roughideal.exact_sets import interval, points
from roughideal.generators import stream_mixture
from roughideal.ideals import FIN, Z
from roughideal.piecewise import RadiusFunction
from roughideal.rough_families import Ball
from roughideal.sequences import Stream


@pytest.mark.parametrize("name", sorted(CONSTRUCTIONS))
def test_every_construction_passes(name):
    r = run_construction(name)
    assert r.passed, "\n".join(r.lines())
    assert r.claims


def test_unknown_construction():
    with pytest.raises(KeyError):
        run_construction("nope")


def test_p_plus_rejected_for_fin():
    with pytest.raises(ValueError):
        p_plus_counterexample(FIN, Stream(0, 1, Fraction(1, 2)))


def test_p_plus_z_separates_gamma_and_lambda():
    r = p_plus_counterexample(Z, Stream(0, 1, Fraction(1, 2)))
    assert r.passed
    assert any("Gamma" in c.text for c in r.claims)
    assert any("not in Lambda" in c.text for c in r.claims)


@pytest.mark.parametrize("seed", range(6))
def test_closure_approximation_sup_bound(seed):
    rng = random.Random(seed)
    F = Ball(RadiusFunction.constant(Fraction(1, 2)))
    while True:
        y = stream_mixture(rng)
        L = lim_rough(y, FIN, F).set
        if not L.is_empty():
            break
    eta = L.points[0] if L.points else L.intervals[0].lo
    for k in (0, 3, 8, 15):
        r = closure_approximation(y, FIN, F, eta, k)
        assert r.passed, "\n".join(r.lines())
        x = r.values["x"]
        bound = Fraction(1, 2**k)
        assert r.values["sup"] < bound
        assert all(abs(x.value(n) - y.value(n)) < bound for n in range(300))


def test_non_uc_checks():
    r = non_uc_counterexample(n_check=32)
    assert r.passed
    texts = [c.text for c in r.claims]
    assert any("0 in Lambda" in t for t in texts)
    assert any("1 not in Lambda" in t for t in texts)


def test_cluster_family_is_closed_neighbourhood():
    r = cluster_family_instance(interval(0, 1) | points(3), Fraction(1, 4))
    assert r.passed, "\n".join(r.lines())


def test_results_serialize():
    r = run_construction("fubini")
    js = r.to_json()
    assert js["passed"] is True
    assert len(js["claims"]) == len(r.claims)
