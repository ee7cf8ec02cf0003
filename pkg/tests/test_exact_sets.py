from fractions import Fraction as F

from hypothesis import given, strategies as st

from roughideal.exact_sets import (
    INF, RealSet, closure, dilate, distance, hausdorff_distance, interval,
    intersect_nonempty, points, subset_of, tail,
)

half, third = F(1, 2), F(1, 3)


def test_geometric_tail_intersections():
    t3 = tail(third, third)                       # {3^-n-1}
    assert not intersect_nonempty(t3, points(0))
    assert intersect_nonempty(closure(t3), points(0))
    assert intersect_nonempty(interval(-4, 4), points(-1, 1))
    assert (tail(1, half) & tail(1, third)) == points(1)
    assert (tail(half, half) & tail(third, third)).is_empty()
    quarter = tail(1, half) & tail(1, F(1, 4))
    for j in range(8):
        assert F(1, 4) ** j in quarter
        assert F(1, 2) ** (2 * j + 1) not in quarter


def test_distances():
    assert distance(5, interval(-3, 3)) == 2
    assert distance(half, tail(1, half)) == 0
    assert distance(F(2, 5), tail(third, third)) == F(1, 15)
    assert distance(0, tail(1, half)) == 0
    assert distance(0, tail(1, half, closed=True)) == 0


def test_hausdorff():
    assert hausdorff_distance(points(-1, 1), points(-1, 1)) == 0
    assert hausdorff_distance(interval(0, 1), interval(0, 2)) == 1
    assert hausdorff_distance(points(0), points(F(1, 4))) == F(1, 4)
    assert hausdorff_distance(tail(1, half, closed=True), interval(0, 1)) == F(1, 4)
    assert hausdorff_distance(tail(1, half, closed=True), tail(1, half)) == 0
    assert hausdorff_distance(interval(0, 1), RealSet.real_line()) == INF


def test_subset_and_dilate():
    assert subset_of(points(-1, 1), interval(-1, 5))
    assert not subset_of(points(-1, 1), interval(-half, F(11, 2)))
    assert dilate(points(0, 1), 1) == interval(-1, 2)
    d = dilate(tail(1, half), F(1, 10))
    assert d == (interval(-F(1, 10), F(7, 20)) | interval(F(2, 5), F(3, 5))
                 | interval(F(9, 10), F(11, 10)))


def test_normalization_and_complement():
    s = interval(0, 1, False, False) | points(1) | interval(1, 2, False, True)
    assert s == interval(0, 2, False, True)
    c = interval(-4, 4, False, False).complement()
    assert c.to_text() == "(-inf,-4] ∪ [4,inf)"


def test_text_roundtrip_simple():
    s = interval(-4, 4) | points(0, 7) | tail(1, half, start=3)
    assert RealSet.from_text(s.to_text()) == s


# -- properties -------------------------------------------------------------

small = st.fractions(min_value=-4, max_value=4, max_denominator=6)
ratios = st.sampled_from([F(1, 2), F(1, 3), F(-1, 2), F(2, 3), F(1, 4)])


@st.composite
def real_sets(draw, allow_tails=True):
    s = RealSet.empty()
    for _ in range(draw(st.integers(0, 3))):
        a, b = sorted((draw(small), draw(small)))
        s = s | interval(a, b, draw(st.booleans()), draw(st.booleans()))
    pts = draw(st.lists(small, max_size=3))
    if pts:
        s = s | points(*pts)
    if allow_tails and draw(st.booleans()):
        c = draw(st.sampled_from([F(1), F(-1), F(1, 2), F(3, 2)]))
        s = s | tail(c, draw(ratios), closed=draw(st.booleans()), center=draw(small))
    return s


probes = st.lists(small, min_size=40, max_size=40)


@given(real_sets(), probes)
def test_normalize_idempotent_and_membership_preserving(s, ps):
    n = s.normalize()
    assert n.normalize() == n
    for p in ps:
        assert (p in s) == (p in n)


@given(real_sets())
def test_closure_idempotent_extensive(s):
    c = closure(s)
    assert closure(c) == c
    assert subset_of(s, c)
    assert c.is_closed()


@given(real_sets(), probes)
def test_distance_zero_iff_in_closure(s, ps):
    if s.is_empty():
        return
    c = closure(s)
    for p in ps:
        assert (distance(p, s) == 0) == (p in c)
        if p in s:
            assert distance(p, s) == 0


@given(real_sets(), real_sets(), real_sets())
def test_hausdorff_is_pseudometric(a, b, c):
    if a.is_empty() or b.is_empty() or c.is_empty():
        return
    dab, dba = hausdorff_distance(a, b), hausdorff_distance(b, a)
    assert dab == dba >= 0
    assert hausdorff_distance(a, a) == 0
    assert dab <= hausdorff_distance(a, c) + hausdorff_distance(c, b)
    if dab == 0:
        assert closure(a) == closure(b) or subset_of(closure(a), closure(b))


@given(real_sets(), real_sets(), probes)
def test_subset_agrees_with_probes(a, b, ps):
    if subset_of(a, b):
        for p in ps:
            if p in a:
                assert p in b
    inter = a & b
    for p in ps:
        assert (p in inter) == (p in a and p in b)
        assert (p in (a | b)) == (p in a or p in b)


@given(real_sets(allow_tails=False), probes)
def test_complement(a, ps):
    c = a.complement()
    for p in ps:
        assert (p in c) != (p in a)


@given(real_sets(), st.fractions(min_value=F(1, 16), max_value=2, max_denominator=16), probes)
def test_dilation_matches_distance(a, eps, ps):
    if a.is_empty():
        return
    d = dilate(a, eps)
    for p in ps:
        assert (p in d) == (distance(p, a) <= eps) or distance(p, a) == eps
