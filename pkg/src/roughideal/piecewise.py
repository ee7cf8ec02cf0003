"""Piecewise radius functions and exact solution of ``f(eta) <= r(eta)``.

A radius piece is ``alpha + beta*eta + gamma/eta`` on an interval.  Distance-type
functions ``f`` are piecewise linear.  On each open region between breakpoints the
inequality becomes a polynomial inequality of degree at most two, solved exactly
when the discriminant is a rational square and bracketed to ``2^-48`` otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exact_sets import INF, Interval, Number, Q, RealSet, fmt_num

_BRACKET = Fraction(1, 2**48)


@dataclass(frozen=True)
class Piece:
    lo: Number
    hi: Number
    lo_closed: bool
    hi_closed: bool
    alpha: Fraction = Fraction(0)
    beta: Fraction = Fraction(0)
    gamma: Fraction = Fraction(0)

    def __post_init__(self):
        if self.gamma != 0 and self.lo <= 0 <= self.hi:
            raise ValueError("a 1/x term needs a domain away from 0")

    @property
    def domain(self) -> Interval:
        return Interval(self.lo, self.hi, self.lo_closed, self.hi_closed)

    def __call__(self, x: Fraction) -> Fraction:
        v = self.alpha + self.beta * x
        if self.gamma:
            v += self.gamma / x
        return v

    def limit(self, x: Number) -> Fraction:
        """Value of the piece formula at an endpoint of its domain."""
        return self(Q(x))

    def expr_text(self) -> str:
        terms = []
        if self.alpha or (not self.beta and not self.gamma):
            terms.append(fmt_num(self.alpha))
        if self.beta:
            b = self.beta
            t = "x" if b == 1 else "-x" if b == -1 else f"{fmt_num(b)}*x"
            terms.append(t)
        if self.gamma:
            terms.append(f"{fmt_num(self.gamma)}/x")
        out = terms[0]
        for t in terms[1:]:
            out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return out

    def to_text(self) -> str:
        return f"{self.domain.to_text()}: {self.expr_text()}"


@dataclass(frozen=True)
class RadiusFunction:
    pieces: tuple[Piece, ...]

    def __post_init__(self):
        ps = sorted(self.pieces, key=lambda p: (p.lo, not p.lo_closed))
        object.__setattr__(self, "pieces", tuple(ps))
        # the domains must partition the real line
        if not ps or ps[0].lo != -INF or ps[-1].hi != INF:
            raise ValueError("radius pieces must cover the real line")
        for a, b in zip(ps, ps[1:]):
            if a.hi != b.lo or a.hi_closed == b.lo_closed:
                raise ValueError(f"radius pieces overlap or leave a gap at {fmt_num(a.hi)}")

    @classmethod
    def constant(cls, c) -> "RadiusFunction":
        return cls((Piece(-INF, INF, False, False, Q(c)),))

    @property
    def is_constant(self) -> bool:
        return len(self.pieces) == 1 and not self.pieces[0].beta and not self.pieces[0].gamma

    def piece_at(self, x) -> Piece:
        x = Q(x)
        for p in self.pieces:
            if p.domain.contains(x):
                return p
        raise AssertionError("pieces cover the line")

    def __call__(self, x) -> Fraction:
        x = Q(x)
        return self.piece_at(x)(x)

    def breakpoints(self) -> list[Fraction]:
        return [Q(p.hi) for p in self.pieces[:-1]]

    def is_bounded(self) -> bool:
        for p in self.pieces:
            if p.beta and (p.lo == -INF or p.hi == INF):
                return False
        return True

    def nonnegative(self) -> bool:
        """Exact check of ``r >= 0``: the solution set of ``0 <= r`` is the whole line."""
        zero = PiecewiseLinear((Linear(-INF, INF, Fraction(0), Fraction(0)),))
        return solve_le(zero, self).inner == RealSet.real_line()

    def usc_check(self) -> tuple[bool, Fraction | None, Fraction | None]:
        """(is USC, offending breakpoint, gap).  Pieces are continuous, so only
        breakpoints can fail: USC iff the value dominates both one-sided limits."""
        for a, b in zip(self.pieces, self.pieces[1:]):
            x = Q(a.hi)
            v = self(x)
            left, right = a.limit(x), b.limit(x)
            gap = max(left, right) - v
            if gap > 0:
                return False, x, gap
        return True, None, None

    def to_text(self) -> str:
        if self.is_constant:
            return f"const {fmt_num(self.pieces[0].alpha)}"
        return "pw{ " + "; ".join(p.to_text() for p in self.pieces) + " }"


def usc_check(r: RadiusFunction):
    ok, at, gap = r.usc_check()
    return ("USC", None, None) if ok else ("NotUSC", at, gap)


# -- piecewise linear functions of eta ----------------------------------------------


@dataclass(frozen=True)
class Linear:
    """``slope*eta + intercept`` on the open region ``(lo, hi)``."""

    lo: Number
    hi: Number
    slope: Fraction
    intercept: Fraction


@dataclass(frozen=True)
class PiecewiseLinear:
    """Continuous piecewise linear function given on open regions plus its breakpoints."""

    regions: tuple[Linear, ...]

    def __call__(self, x) -> Fraction:
        x = Q(x)
        for r in self.regions:
            if r.lo <= x <= r.hi:
                return r.slope * x + r.intercept
        raise AssertionError("regions cover the line")

    def breakpoints(self) -> list[Fraction]:
        return [Q(r.hi) for r in self.regions[:-1]]


def _components(G: RealSet) -> list[tuple[Fraction, Fraction]]:
    """Connected components of a compact finite union of points and closed intervals."""
    comps = [(Q(iv.lo), Q(iv.hi)) for iv in G.intervals] + [(p, p) for p in G.points]
    comps.sort()
    out: list[tuple[Fraction, Fraction]] = []
    for lo, hi in comps:
        if out and lo <= out[-1][1]:
            out[-1] = (out[-1][0], max(out[-1][1], hi))
        else:
            out.append((lo, hi))
    return out


def near_distance(G: RealSet) -> PiecewiseLinear:
    """``eta -> dist(eta, G)`` for a nonempty compact union of points and intervals."""
    comps = _components(G)
    if not comps:
        raise ValueError("distance to the empty set")
    regs = [Linear(-INF, comps[0][0], Fraction(-1), comps[0][0])]
    for i, (lo, hi) in enumerate(comps):
        if hi > lo:
            regs.append(Linear(lo, hi, Fraction(0), Fraction(0)))
        if i + 1 < len(comps):
            nlo = comps[i + 1][0]
            mid = (hi + nlo) / 2
            regs.append(Linear(hi, mid, Fraction(1), -hi))
            regs.append(Linear(mid, nlo, Fraction(-1), nlo))
    regs.append(Linear(comps[-1][1], INF, Fraction(1), -comps[-1][1]))
    return PiecewiseLinear(tuple(regs))


def far_distance(G: RealSet) -> PiecewiseLinear:
    """``eta -> max{|a - eta| : a in G}`` for a nonempty bounded set (only its hull matters)."""
    lo, hi = G.bounds()
    lo, hi = Q(lo), Q(hi)
    mid = (lo + hi) / 2
    return PiecewiseLinear((Linear(-INF, mid, Fraction(-1), hi), Linear(mid, INF, Fraction(1), -lo)))


# -- solving f <= r ---------------------------------------------------------------------


@dataclass
class Solution:
    inner: RealSet
    outer: RealSet

    @property
    def exact(self) -> bool:
        return self.inner == self.outer


def _poly_roots(a: Fraction, b: Fraction, c: Fraction, lo: Number, hi: Number):
    """Real roots of ``a x^2 + b x + c`` strictly inside ``(lo, hi)``, each as (lower, upper) bracket."""
    if a == 0:
        if b == 0:
            return []
        x = -c / b
        return [(x, x)] if lo < x < hi else []
    D = b * b - 4 * a * c
    if D < 0:
        return []
    sq = _rational_sqrt(D)
    out = []
    if sq is not None:
        for x in sorted({(-b - sq) / (2 * a), (-b + sq) / (2 * a)}):
            if lo < x < hi:
                out.append((x, x))
        return out
    for sgn in (-1, 1):
        approx = (-b + sgn * math.sqrt(float(D))) / (2 * float(a))
        if not (float(lo) - 1 < approx < float(hi) + 1):
            continue
        br = _bracket_root(lambda x: (a * x + b) * x + c, Q(approx), lo, hi)
        if br is not None:
            out.append(br)
    out.sort()
    return out


def _rational_sqrt(D: Fraction) -> Fraction | None:
    n, d = D.numerator, D.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def _bracket_root(f, guess: Fraction, lo: Number, hi: Number):
    """Shrink a sign-change bracket around an irrational root near ``guess``."""
    w = Fraction(1, 2**20)
    a, b = guess - w, guess + w
    fa, fb = f(a), f(b)
    while (fa > 0) == (fb > 0):
        w *= 4
        a, b = guess - w, guess + w
        fa, fb = f(a), f(b)
        if w > 2**20:
            return None
    while b - a > _BRACKET:
        m = (a + b) / 2
        fm = f(m)
        if (fm > 0) == (fa > 0):
            a, fa = m, fm
        else:
            b, fb = m, fm
    if b <= lo or a >= hi:
        return None
    return (max(a, Q(lo)) if lo != -INF else a, min(b, Q(hi)) if hi != INF else b)


def _region_solution(f: Linear, p: Piece, lo: Number, hi: Number, strict: bool):
    """Solve ``f <= r`` (``<`` if strict) on the open region ``(lo, hi)``."""
    # g(x) = f(x) - r(x) = (s - beta) x + (t - alpha) - gamma/x ; multiply by x when gamma != 0
    s, t = f.slope, f.intercept
    if p.gamma:
        sign = 1 if lo >= 0 else -1
        a, b, c = (s - p.beta) * sign, (t - p.alpha) * sign, -p.gamma * sign
    else:
        a, b, c = Fraction(0), s - p.beta, t - p.alpha
    poly = lambda x: (a * x + b) * x + c
    roots = _poly_roots(a, b, c, lo, hi)
    inner: list[Interval] = []
    outer: list[Interval] = []
    cuts = [lo] + [r[0] for r in roots] + [hi]
    uppers = [lo] + [r[1] for r in roots] + [hi]
    for i in range(len(cuts) - 1):
        a_lo, a_hi = uppers[i], cuts[i + 1]  # conservative sub-region between brackets
        if a_lo == -INF and a_hi == INF:
            probe = Fraction(0) if not p.gamma else Fraction(1)
        elif a_lo == -INF:
            probe = Q(a_hi) - 1
        elif a_hi == INF:
            probe = Q(a_lo) + 1
        else:
            probe = (Q(a_lo) + Q(a_hi)) / 2
        val = poly(probe)
        if val < 0 or (val == 0 and not strict):
            o_lo, o_hi = cuts[i], uppers[i + 1]
            closed_lo = i > 0 and not strict and roots[i - 1][0] == roots[i - 1][1]
            closed_hi = i + 1 < len(cuts) - 1 and not strict and roots[i][0] == roots[i][1]
            inner.append(Interval(a_lo, a_hi, closed_lo, closed_hi))
            outer.append(Interval(o_lo, o_hi, i > 0 and not strict, i + 1 < len(cuts) - 1 and not strict))
    # isolated tangent roots where equality holds
    if not strict:
        for r in roots:
            if r[0] == r[1] and poly(r[0]) == 0:
                inner.append(Interval(r[0], r[0], True, True))
                outer.append(Interval(r[0], r[0], True, True))
    return inner, outer


def solve_le(f: PiecewiseLinear, r: RadiusFunction, strict: bool = False) -> Solution:
    """``{eta : f(eta) <= r(eta)}`` (or ``<``) as inner/outer interval lists."""
    bps = sorted(set(f.breakpoints()) | set(r.breakpoints()))
    inner_iv: list[Interval] = []
    outer_iv: list[Interval] = []
    pts: list[Fraction] = []
    edges: list[Number] = [-INF] + bps + [INF]
    for lo, hi in zip(edges, edges[1:]):
        probe = _region_probe(lo, hi)
        fl = _linear_at(f, probe)
        pc = r.piece_at(probe)
        i_iv, o_iv = _region_solution(fl, pc, lo, hi, strict)
        inner_iv += i_iv
        outer_iv += o_iv
    for b in bps:
        fv, rv = f(b), r(b)
        if fv < rv or (fv == rv and not strict):
            pts.append(b)
    inner = RealSet.of(inner_iv, pts)
    outer = RealSet.of(outer_iv, pts)
    return Solution(inner, outer)


def _region_probe(lo: Number, hi: Number) -> Fraction:
    if lo == -INF and hi == INF:
        return Fraction(1, 3)
    if lo == -INF:
        return Q(hi) - 1
    if hi == INF:
        return Q(lo) + 1
    return (Q(lo) + Q(hi)) / 2


def _linear_at(f: PiecewiseLinear, x: Fraction) -> Linear:
    for reg in f.regions:
        if reg.lo <= x <= reg.hi:
            return reg
    raise AssertionError


def negative_example_radius() -> RadiusFunction:
    """``0`` on ``[-1, 1]``, ``|eta| - 1/|eta|`` outside."""
    return RadiusFunction((
        Piece(-INF, -1, False, False, Fraction(0), Fraction(-1), Fraction(1)),
        Piece(-1, 1, True, True),
        Piece(1, INF, False, False, Fraction(0), Fraction(1), Fraction(-1)),
    ))
