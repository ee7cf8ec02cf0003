from fractions import Fraction

import pytest

from roughideal.exact_sets import INF, Interval, interval, points, tail
from roughideal.piecewise import Piece, RadiusFunction, negative_example_radius
from roughideal.rough_families import (
    CERTIFIED, FALSIFIED, MODEL, Ball, Degenerate, ModelFamily, Region, Table,
    example21_family, f_prime_family,
)

half = Fraction(1, 2)


def test_ball_members():
    b = Ball(RadiusFunction.constant(3), closed=False)
    assert b.at(1) == interval(-2, 4, False, False)
    assert Ball(RadiusFunction.constant(0), closed=False).at(5) == points(5)
    assert Ball(negative_example_radius()).at(2) == interval(half, Fraction(7, 2))


def test_every_member_contains_eta():
    fams = [Degenerate(), Ball(negative_example_radius()), example21_family(), f_prime_family()]
    for F in fams:
        for k in range(-24, 25):
            eta = Fraction(k, 4)
            assert F.at(eta).contains(eta)


def test_table_lookup_order():
    T = example21_family()
    assert T.at(1) == tail(1, half)
    assert T.at(Fraction(1, 3)) == tail(Fraction(1, 3), Fraction(1, 3))
    assert T.at(half) == points(half)
    Fp = f_prime_family()
    assert Fp.at(0) == points(0, 1)
    assert Fp.at(2) == points(2)


def test_table_rejects_member_without_eta():
    with pytest.raises(ValueError):
        Table(((Fraction(2), interval(0, 1)),))


def test_region_overrides_default():
    T = Table((), (Region(Interval(0, 1, True, True), points(5)),))
    assert T.at(half) == points(half, 5)
    assert T.at(2) == points(2)


def test_tau_hat_statuses():
    assert Degenerate().tau_hat().status == CERTIFIED
    assert ModelFamily().tau_hat().status == CERTIFIED
    assert Ball(negative_example_radius()).tau_hat().status == CERTIFIED
    jump = RadiusFunction((Piece(-INF, 0, False, True, Fraction(0)),
                           Piece(0, INF, False, False, Fraction(1))))
    th = Ball(jump).tau_hat()
    assert th.status == FALSIFIED and th.eta == 0


def test_model_family():
    F = ModelFamily()
    assert F.space == MODEL
    assert F.at(Fraction(1, 4)) == points(Fraction(1, 4), 0)
    assert F.at(0) == points(0)
    with pytest.raises(ValueError):
        F.at(Fraction(1, 3))
