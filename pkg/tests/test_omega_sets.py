from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, strategies as st

from roughideal.omega_sets import (
    AP, ALL, EVENS, ODDS, Col, ColsFrom, Finite, Range, Row, Stair, Undecidable,
    cantor_pair, cantor_unpair, cantor_unpair_array, finiteness, fubini_membership,
    index_array, index_value, level_set, natural_density, normalize, upper_set,
)


def test_pairing_basics():
    assert cantor_unpair(0) == (0, 0)
    seen = {cantor_unpair(n) for n in range(5050)}
    assert len(seen) == 5050
    k, m = cantor_unpair_array(np.arange(5050))
    assert all((int(a), int(b)) == cantor_unpair(i) for i, (a, b) in enumerate(zip(k, m)))


@given(st.integers(0, 10**12))
def test_pairing_roundtrip(n):
    assert cantor_pair(*cantor_unpair(n)) == n


def test_linear_decisions():
    assert natural_density(EVENS).value == F(1, 2)
    assert natural_density(EVENS | AP(1, 4)).value == F(3, 4)
    assert natural_density(Finite({1, 5})).value == 0
    f = finiteness(Range(2, 9) & ODDS)
    assert f.finite and f.card == 3
    assert not finiteness(~Range(0, 100)).finite


def test_grid_decisions():
    odd_stair = Stair(1, 0, 1)
    assert fubini_membership(odd_stair) == "Positive"
    assert fubini_membership(~Stair(1, 1)) == "Ideal"      # m <= k
    assert fubini_membership(Col(3) | Row(2)) == "Ideal"
    assert fubini_membership(ColsFrom(5)) == "Positive"
    assert fubini_membership(ColsFrom(5) & Row(1)) == "Ideal"
    assert not finiteness(Stair(1, 0) & ~Stair(1, 1)).finite  # diagonal
    f = finiteness(Stair(0, 2) & ~Stair(0, 4) & ~ColsFrom(3))
    assert f.finite and f.card == 6
    assert natural_density(Col(0)).lower == 0
    assert fubini_membership(EVENS & Col(1)) == "Ideal"
    assert fubini_membership(ALL) == "Positive"
    assert fubini_membership(EVENS) == "Positive"
    with pytest.raises(Undecidable):
        finiteness(EVENS & Col(1))


def test_level_sets():
    for idx in ("n", "col", "row", "v2"):
        vals = [index_value(idx, n) for n in range(500)]
        arr = index_array(idx, 500)
        for j in range(4):
            ls = level_set(idx, j).mask(500)
            us = upper_set(idx, j).mask(500)
            for n in range(500):
                v = vals[n]
                assert arr[n] == (-1 if v is None else v)
                assert ls[n] == (v == j)
                assert us[n] == (v is None or v >= j)


def test_text():
    e = Col(1) | ~(Row(2) & ODDS)
    assert e.to_text() == "col(1) | !(row(2) & odds)"
    assert Stair(2, -1, 0).to_text() == "stair(m>=2k-1, even)"
    assert ALL.to_text() == "all"


# -- properties against brute force ----------------------------------------------------

lin_atoms = st.one_of(
    st.builds(lambda a, d: AP(a, d), st.integers(0, 12), st.integers(1, 6)),
    st.builds(lambda s: Finite(frozenset(s)), st.sets(st.integers(0, 40), max_size=4)),
    st.builds(lambda a, b: Range(min(a, b), max(a, b)), st.integers(0, 30), st.integers(0, 30)),
)
grid_atoms = st.one_of(
    st.builds(Col, st.integers(0, 6)),
    st.builds(ColsFrom, st.integers(0, 6), st.integers(1, 3)),
    st.builds(Row, st.integers(0, 6)),
    st.builds(Stair, st.integers(0, 3), st.integers(-3, 6), st.sampled_from([None, 0, 1])),
    st.builds(lambda s: Finite(frozenset(s)), st.sets(st.integers(0, 60), max_size=3)),
)


def exprs(atoms):
    return st.recursive(atoms, lambda c: st.one_of(
        st.builds(lambda a, b: a | b, c, c),
        st.builds(lambda a, b: a & b, c, c),
        st.builds(lambda a: ~a, c)), max_leaves=5)


@given(exprs(lin_atoms))
def test_linear_matches_bruteforce(e):
    N = 20_000
    mask = e.mask(N)
    assert all(mask[n] == e.contains(n) for n in range(0, N, 97))
    assert np.array_equal(normalize(e).mask(N), mask)
    f = finiteness(e)
    if f.finite:
        assert mask.sum() == f.card
    else:
        assert mask[N // 2:].any()
    d = natural_density(e).value
    assert abs(float(d) - mask.mean()) < 0.01


@given(exprs(grid_atoms))
def test_grid_matches_bruteforce(e):
    # brute force on a large triangle of the grid
    K = 60
    grid = np.array([[e.grid_contains(k, m) for m in range(K)] for k in range(K)])
    f = finiteness(e)
    if f.finite:
        assert grid.sum() == f.card
        assert not grid[:, K // 2:].any() and not grid[K // 2:, :].any()
    # generated thresholds are below 3k + 80, past which rows are 2-periodic
    col_inf = np.array([e.grid_contains(k, 3 * k + 80) or e.grid_contains(k, 3 * k + 81)
                        for k in range(K)])
    fm = fubini_membership(e)
    assert (fm == "Positive") == bool(col_inf[K // 2:].any())


@given(exprs(st.one_of(lin_atoms, grid_atoms)))
def test_mixed_fubini_matches_bruteforce(e):
    # rows past every threshold, over a full period 2L of the linear atoms
    L = 6
    for a in e.atoms():
        if isinstance(a, AP):
            L = L * a.d // np.gcd(L, a.d)
    def col_inf(k):
        h = 3 * k + 200
        return any(e.grid_contains(k, m) for m in range(h, h + 2 * L))
    pos = fubini_membership(e) == "Positive"
    assert pos == any(col_inf(k) for k in range(60, 60 + 2 * L))
