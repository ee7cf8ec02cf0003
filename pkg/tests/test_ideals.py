import pytest
from hypothesis import given

from roughideal.ideals import (
    FIN, FINXFIN, IN, POSITIVE, UNKNOWN, Z, IdealModel, p_plus_property_report,
    p_property_report,
)
from roughideal.omega_sets import AP, ALL, EVENS, Col, Finite

from test_omega_sets import exprs, grid_atoms, lin_atoms


def test_membership_examples():
    assert Z.membership(EVENS) == POSITIVE
    assert Z.membership(AP(0, 2**10)) == POSITIVE
    assert FINXFIN.membership(Col(5)) == IN
    assert FIN.membership(Finite({1, 2})) == IN
    assert FIN.membership(EVENS) == POSITIVE
    assert Z.membership(Col(0)) == UNKNOWN          # density only bracketed
    assert FIN.membership(EVENS & Col(1)) == UNKNOWN


@pytest.mark.parametrize("I", [FIN, Z, FINXFIN])
def test_admissible(I):
    assert I.membership(ALL) == POSITIVE
    for n in range(5):
        assert I.membership(Finite({n, n + 3})) == IN


def test_unknown_kind():
    with pytest.raises(ValueError):
        IdealModel("Banach")


def test_property_reports():
    assert p_property_report(FIN).holds and p_property_report(Z).holds
    r = p_property_report(FINXFIN)
    assert not r.holds and r.ok and r.witness is not None
    assert p_plus_property_report(FIN).holds and p_plus_property_report(FIN).ok
    for I in (Z, FINXFIN):
        r = p_plus_property_report(I)
        assert not r.holds and r.ok
    assert [I.is_P for I in (FIN, Z, FINXFIN)] == [True, True, False]
    assert [I.is_P_plus for I in (FIN, Z, FINXFIN)] == [True, False, False]


@given(exprs(lin_atoms), exprs(lin_atoms))
def test_linear_ideal_closure(S, T):
    for I in (FIN, Z):
        ms, mt = I.membership(S), I.membership(T)
        assert UNKNOWN not in (ms, mt)
        if ms == IN and mt == IN:
            assert I.membership(S | T) == IN
        if ms == IN:
            assert I.membership(S & T) == IN
    # prefix empirics
    if Z.membership(S) == IN:
        assert S.mask(100_000).mean() < 0.01
    if FIN.membership(S) == POSITIVE:
        m = S.mask(40_000)
        assert m[:10_000].sum() < m.sum()


@given(exprs(grid_atoms), exprs(grid_atoms))
def test_grid_ideal_closure(S, T):
    ms, mt = FINXFIN.membership(S), FINXFIN.membership(T)
    if ms == IN and mt == IN:
        assert FINXFIN.membership(S | T) == IN
    if ms == IN:
        assert FINXFIN.membership(S & T) == IN
    if FIN.membership(S) == IN:
        assert ms == IN
