"""Exact subsets of the real line built from intervals, points and geometric tails.

A :class:`RealSet` is a finite union of atoms:

* intervals with rational (or infinite) endpoints and per-endpoint closed flags,
* finitely many rational points,
* geometric tails ``{center + coef * ratio**j : j >= 0}`` with ``0 < |ratio| < 1``,
  optionally including their accumulation point ``center``,
* at most one lattice ``{start, start + 1, ...}`` of integers.

Everything is computed with :class:`fractions.Fraction`; floating point only
appears as ``math.inf`` for unbounded interval ends.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Iterator, Union

from ._geometric import EMPTY_PATTERN, IndexPattern, geometric_matches

INF = math.inf
Number = Union[Fraction, float]

_MAX_ENUM = 200_000


def Q(x) -> Fraction:
    """Coerce ints, strings like ``"1/3"`` and Fractions to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        if math.isinf(x):
            raise ValueError("infinite value where a rational is required")
        return Fraction(x).limit_denominator()
    return Fraction(x)


def _end(x) -> Number:
    if isinstance(x, float) and math.isinf(x):
        return x
    if isinstance(x, str) and x.strip().lstrip("+-") in ("inf", "∞"):
        return -INF if x.strip().startswith("-") else INF
    return Q(x)


def fmt_num(x: Number) -> str:
    if isinstance(x, float):
        return "-inf" if x < 0 else "inf"
    return str(x)


@dataclass(frozen=True, order=True)
class Interval:
    lo: Number
    hi: Number
    lo_closed: bool = True
    hi_closed: bool = True

    def __post_init__(self):
        object.__setattr__(self, "lo", _end(self.lo))
        object.__setattr__(self, "hi", _end(self.hi))
        if self.lo == -INF or self.lo == INF:
            object.__setattr__(self, "lo_closed", False)
        if self.hi == INF or self.hi == -INF:
            object.__setattr__(self, "hi_closed", False)

    def is_empty(self) -> bool:
        if self.lo > self.hi:
            return True
        return self.lo == self.hi and not (self.lo_closed and self.hi_closed)

    def is_degenerate(self) -> bool:
        return self.lo == self.hi and self.lo_closed and self.hi_closed

    def contains(self, p: Fraction) -> bool:
        if p < self.lo or p > self.hi:
            return False
        if p == self.lo and not self.lo_closed:
            return False
        if p == self.hi and not self.hi_closed:
            return False
        return True

    def closure_contains(self, p: Fraction) -> bool:
        return self.lo <= p <= self.hi

    def intersect(self, other: "Interval") -> "Interval":
        if self.lo > other.lo or (self.lo == other.lo and not self.lo_closed):
            lo, lc = self.lo, self.lo_closed
        else:
            lo, lc = other.lo, other.lo_closed
        if self.hi < other.hi or (self.hi == other.hi and not self.hi_closed):
            hi, hc = self.hi, self.hi_closed
        else:
            hi, hc = other.hi, other.hi_closed
        return Interval(lo, hi, lc, hc)

    def to_text(self) -> str:
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{left}{fmt_num(self.lo)},{fmt_num(self.hi)}{right}"


@dataclass(frozen=True, order=True)
class Tail:
    """Members ``center + coef * ratio**j`` for ``j >= 0``; ``closed`` adds ``center``."""

    center: Fraction
    coef: Fraction
    ratio: Fraction
    closed: bool = False

    def __post_init__(self):
        for name in ("center", "coef", "ratio"):
            object.__setattr__(self, name, Q(getattr(self, name)))
        if self.coef == 0:
            raise ValueError("tail coefficient must be nonzero")
        if not 0 < abs(self.ratio) < 1:
            raise ValueError("tail ratio must satisfy 0 < |ratio| < 1")

    @classmethod
    def make(cls, c, q, start: int = 0, closed: bool = False, center=0) -> "Tail":
        """``{center + c*q**n : n >= start}``."""
        c, q = Q(c), Q(q)
        return cls(Q(center), c * q**start, q, closed)

    def dev(self, j: int) -> Fraction:
        return self.coef * self.ratio**j

    def member(self, j: int) -> Fraction:
        return self.center + self.coef * self.ratio**j

    def first_index_below(self, rho: Number) -> int:
        """Smallest ``j`` with ``|dev(j)| < rho`` (all later ones are smaller)."""
        if rho == INF:
            return 0
        if rho <= 0:
            raise ValueError("rho must be positive")
        j, d = 0, abs(self.coef)
        r = abs(self.ratio)
        while d >= rho:
            j += 1
            d *= r
            if j > _MAX_ENUM:
                raise RuntimeError("tail enumeration bound exceeded")
        return j

    def index_of(self, p: Fraction) -> int | None:
        t = Q(p) - self.center
        if t == 0:
            return None
        j, d = 0, self.coef
        while abs(d) >= abs(t):
            if d == t:
                return j
            j += 1
            d *= self.ratio
        return None

    def contains(self, p: Fraction) -> bool:
        p = Q(p)
        if p == self.center:
            return self.closed
        return self.index_of(p) is not None

    def side(self, j: int) -> int:
        return 1 if self.dev(j) > 0 else -1

    def hull(self) -> Interval:
        """Smallest closed interval holding every member and the center."""
        a, b = self.member(0), self.member(1)
        pts = [a, self.center] + ([b] if self.ratio < 0 else [])
        return Interval(min(pts), max(pts))

    def subtail(self, start: int, step: int, closed: bool) -> "Tail":
        return Tail(self.center, self.dev(start), self.ratio**step, closed)

    def to_text(self) -> str:
        s = f"tail({self.coef}, {self.ratio}, from=0, closed={'true' if self.closed else 'false'}"
        if self.center != 0:
            s += f", center={self.center}"
        return s + ")"


def _merge_intervals(ivs: list[Interval]) -> list[Interval]:
    ivs = sorted((iv for iv in ivs if not iv.is_empty()), key=lambda i: (i.lo, not i.lo_closed))
    out: list[Interval] = []
    for iv in ivs:
        if out:
            cur = out[-1]
            touch = iv.lo < cur.hi or (iv.lo == cur.hi and (cur.hi_closed or iv.lo_closed))
            if touch:
                if iv.hi > cur.hi:
                    hi, hc = iv.hi, iv.hi_closed
                elif iv.hi == cur.hi:
                    hi, hc = cur.hi, cur.hi_closed or iv.hi_closed
                else:
                    hi, hc = cur.hi, cur.hi_closed
                lc = cur.lo_closed or (iv.lo == cur.lo and iv.lo_closed)
                out[-1] = Interval(cur.lo, hi, lc, hc)
                continue
        out.append(iv)
    return out


@dataclass(frozen=True)
class RealSet:
    intervals: tuple[Interval, ...] = ()
    points: tuple[Fraction, ...] = ()
    tails: tuple[Tail, ...] = ()
    naturals_from: int | None = None
    _normal: bool = field(default=False, compare=False, repr=False)

    # -- construction -----------------------------------------------------

    @classmethod
    def of(cls, intervals: Iterable[Interval] = (), points: Iterable = (),
           tails: Iterable[Tail] = (), naturals_from: int | None = None) -> "RealSet":
        return cls(tuple(intervals), tuple(Q(p) for p in points), tuple(tails),
                   naturals_from).normalize()

    @classmethod
    def empty(cls) -> "RealSet":
        return cls(_normal=True)

    @classmethod
    def real_line(cls) -> "RealSet":
        return cls.of([Interval(-INF, INF)])

    def normalize(self) -> "RealSet":
        if self._normal:
            return self
        ivs: list[Interval] = []
        pts: set[Fraction] = set()
        for iv in self.intervals:
            if iv.is_empty():
                continue
            if iv.is_degenerate():
                pts.add(Q(iv.lo))
            else:
                ivs.append(iv)
        pts |= set(self.points)
        nat = self.naturals_from
        # points landing on an open endpoint close it; repeat until stable
        while True:
            ivs = _merge_intervals(ivs)
            changed = False
            rest = set()
            for p in pts:
                if any(iv.contains(p) for iv in ivs):
                    continue
                hit = False
                for k, iv in enumerate(ivs):
                    if iv.lo == p:
                        ivs[k] = replace(iv, lo_closed=True)
                        hit = True
                        break
                    if iv.hi == p:
                        ivs[k] = replace(iv, hi_closed=True)
                        hit = True
                        break
                if hit:
                    changed = True
                else:
                    rest.add(p)
            pts = rest
            if not changed:
                break
        if nat is not None:
            for iv in ivs:
                if iv.hi == INF and (iv.lo < nat or (iv.lo == nat and iv.lo_closed)):
                    nat = None
                    break
        if nat is not None:
            pts = {p for p in pts if not (p.denominator == 1 and p >= nat)}

        def covered(p: Fraction) -> bool:
            if any(iv.contains(p) for iv in ivs) or p in pts:
                return True
            return nat is not None and p.denominator == 1 and p >= nat

        tails: dict[tuple, Tail] = {}
        for t in self.tails:
            if not t.closed and covered(t.center):
                t = replace(t, closed=True)
            key = (t.center, t.coef, t.ratio)
            if key in tails:
                t = replace(t, closed=t.closed or tails[key].closed)
            tails[key] = t
        kept = []
        for t in tails.values():
            h = t.hull()
            inside = False
            for iv in ivs:
                if iv.lo <= h.lo and h.hi <= iv.hi:
                    ok = all(iv.contains(t.member(j)) for j in (0, 1))
                    if t.closed:
                        ok = ok and iv.contains(t.center)
                    if ok:
                        inside = True
                        break
            if not inside:
                kept.append(t)
        pts = {p for p in pts if not any(t.contains(p) for t in kept)}
        return RealSet(tuple(ivs), tuple(sorted(pts)), tuple(sorted(kept)), nat, _normal=True)

    # -- predicates --------------------------------------------------------

    def contains(self, p) -> bool:
        p = Q(p)
        if any(iv.contains(p) for iv in self.intervals):
            return True
        if p in self.points:
            return True
        if self.naturals_from is not None and p.denominator == 1 and p >= self.naturals_from:
            return True
        return any(t.contains(p) for t in self.tails)

    __contains__ = contains

    def is_empty(self) -> bool:
        return not (self.intervals or self.points or self.tails or self.naturals_from is not None)

    def is_closed(self) -> bool:
        if any((iv.lo != -INF and not iv.lo_closed) or (iv.hi != INF and not iv.hi_closed)
               for iv in self.intervals):
            return False
        return all(t.closed for t in self.tails)

    def is_open(self) -> bool:
        if self.points or self.tails or self.naturals_from is not None:
            return False
        return all(not iv.lo_closed and not iv.hi_closed for iv in self.intervals)

    def is_bounded(self) -> bool:
        if self.naturals_from is not None:
            return False
        return all(iv.lo != -INF and iv.hi != INF for iv in self.intervals)

    def is_finite(self) -> bool:
        return not (self.intervals or self.tails or self.naturals_from is not None)

    def has_tails(self) -> bool:
        return bool(self.tails)

    def bounds(self) -> tuple[Number, Number]:
        if self.is_empty():
            raise ValueError("empty set has no bounds")
        los, his = [], []
        for iv in self.intervals:
            los.append(iv.lo)
            his.append(iv.hi)
        los += list(self.points)
        his += list(self.points)
        for t in self.tails:
            h = t.hull()
            los.append(h.lo)
            his.append(h.hi)
        if self.naturals_from is not None:
            los.append(Fraction(self.naturals_from))
            his.append(INF)
        return min(los), max(his)

    # -- set algebra -------------------------------------------------------

    def union(self, other: "RealSet") -> "RealSet":
        nat = [n for n in (self.naturals_from, other.naturals_from) if n is not None]
        return RealSet(self.intervals + other.intervals, self.points + other.points,
                       self.tails + other.tails, min(nat) if nat else None).normalize()

    __or__ = union

    def closure(self) -> "RealSet":
        ivs = [Interval(iv.lo, iv.hi, True, True) for iv in self.intervals]
        tails = [replace(t, closed=True) for t in self.tails]
        return RealSet(tuple(ivs), self.points, tuple(tails), self.naturals_from).normalize()

    def tail_indices(self, t: Tail) -> IndexPattern:
        """Indices ``j`` such that ``t.member(j)`` lies in this set (exact)."""
        pat = EMPTY_PATTERN
        for iv in self.intervals:
            pat = pat.union(_tail_vs_interval(t, iv))
        if self.points:
            idx = {t.index_of(p) for p in self.points}
            pat = pat.union(IndexPattern(frozenset(i for i in idx if i is not None)))
        for t2 in self.tails:
            pat = pat.union(_tail_vs_tail(t, t2))
        if self.naturals_from is not None:
            pat = pat.union(_tail_vs_naturals(t, self.naturals_from))
        return pat

    def _tail_part(self, t: Tail) -> "RealSet":
        pat = self.tail_indices(t)
        closed = t.closed and self.contains(t.center)
        pts = [t.member(j) for j in pat.finite]
        tails = [t.subtail(s, d, closed) for s, d in pat.progressions]
        if closed and not tails:
            pts.append(t.center)
        return RealSet.of(points=pts, tails=tails)

    def intersect(self, other: "RealSet") -> "RealSet":
        ivs = [a.intersect(b) for a in self.intervals for b in other.intervals]
        pts = [p for p in self.points if other.contains(p)]
        pts += [p for p in other.points if self.contains(p)]
        out = RealSet.of(ivs, pts)
        for t in self.tails:
            out = out.union(other._tail_part(t))
        for t in other.tails:
            out = out.union(self._tail_part(t))
        nat = None
        for a, b in ((self, other), (other, self)):
            if a.naturals_from is None:
                continue
            if b.naturals_from is not None:
                nat = max(a.naturals_from, b.naturals_from)
            for iv in b.intervals:
                lo = max(a.naturals_from, math.ceil(iv.lo) if iv.lo != -INF else a.naturals_from)
                if iv.hi == INF:
                    if not iv.contains(Fraction(lo)):
                        lo += 1
                    nat = lo if nat is None else min(nat, lo)
                else:
                    ints = [Fraction(k) for k in range(lo, math.floor(iv.hi) + 1)]
                    out = out.union(RealSet.of(points=[k for k in ints if iv.contains(k)]))
        if nat is not None:
            out = out.union(RealSet(naturals_from=nat).normalize())
        return out

    __and__ = intersect

    def intersects(self, other: "RealSet") -> bool:
        return not self.intersect(other).is_empty()

    def complement(self) -> "RealSet":
        if self.tails or self.naturals_from is not None:
            raise ValueError("complement is only representable for interval/point sets")
        blocks = [(iv.lo, iv.lo_closed, iv.hi, iv.hi_closed) for iv in self.intervals]
        blocks += [(p, True, p, True) for p in self.points]
        blocks.sort(key=lambda b: (b[0], not b[1]))
        out = []
        prev, prev_closed = -INF, False
        for lo, lc, hi, hc in blocks:
            out.append(Interval(prev, lo, not prev_closed, not lc))
            prev, prev_closed = hi, hc
        out.append(Interval(prev, INF, not prev_closed, False))
        return RealSet.of(out)

    def minus(self, other: "RealSet") -> "RealSet":
        return self.intersect(other.complement())

    def subset_of(self, other: "RealSet") -> bool:
        def inside(iv: Interval, b: Interval) -> bool:
            lo_ok = b.lo < iv.lo or (b.lo == iv.lo and (b.lo_closed or not iv.lo_closed))
            hi_ok = iv.hi < b.hi or (b.hi == iv.hi and (b.hi_closed or not iv.hi_closed))
            return lo_ok and hi_ok

        for iv in self.intervals:
            if not any(inside(iv, b) for b in other.intervals):
                return False
        if not all(other.contains(p) for p in self.points):
            return False
        for t in self.tails:
            if not other.tail_indices(t).covers_all():
                return False
            if t.closed and not other.contains(t.center):
                return False
        if self.naturals_from is not None:
            n0 = self.naturals_from
            top = None
            for iv in other.intervals:
                if iv.hi == INF:
                    top = iv.lo if top is None else min(top, iv.lo)
            if other.naturals_from is not None:
                top = other.naturals_from if top is None else min(top, other.naturals_from)
            if top is None:
                return False
            bound = max(n0, math.ceil(top) + 1 if top != -INF else n0)
            if not all(other.contains(k) for k in range(n0, bound + 1)):
                return False
        return True

    def __le__(self, other: "RealSet") -> bool:
        return self.subset_of(other)

    def remove_points(self, pts: Iterable) -> "RealSet":
        pts = [Q(p) for p in pts]
        if not pts:
            return self
        if self.tails or self.naturals_from is not None:
            # only interval/point parts can be split; the rest must avoid the points
            bad = [p for p in pts if any(t.contains(p) for t in self.tails) or (
                self.naturals_from is not None and p.denominator == 1 and p >= self.naturals_from)]
            if bad:
                raise ValueError("cannot remove tail or lattice members exactly")
            core = RealSet.of(self.intervals, self.points).remove_points(pts)
            return RealSet(core.intervals, core.points, self.tails, self.naturals_from).normalize()
        return self.minus(RealSet.of(points=pts))

    # -- metric ------------------------------------------------------------

    def distance(self, p) -> Fraction:
        """Exact ``inf {|p - a| : a in self}``."""
        if self.is_empty():
            raise ValueError("distance to the empty set")
        p = Q(p)
        best: Number = INF
        for iv in self.intervals:
            if iv.closure_contains(p):
                return Fraction(0)
            best = min(best, iv.lo - p if p < iv.lo else p - iv.hi)
        for a in self.points:
            best = min(best, abs(p - a))
        if self.naturals_from is not None:
            if p <= self.naturals_from:
                best = min(best, self.naturals_from - p)
            else:
                best = min(best, p - math.floor(p), math.ceil(p) - p)
        for t in self.tails:
            best = min(best, _tail_distance(t, p))
        return Fraction(best)

    def dilate(self, eps, strict: bool = False) -> "RealSet":
        """``{y : d(y, A) <= eps}`` (or ``< eps`` when ``strict``)."""
        eps = Q(eps)
        if eps < 0:
            raise ValueError("negative dilation")
        if eps == 0:
            if strict:
                return RealSet.empty()
            return self.closure()
        c = not strict
        ivs = [Interval(iv.lo - eps if iv.lo != -INF else -INF,
                        iv.hi + eps if iv.hi != INF else INF, c, c) for iv in self.intervals]
        ivs += [Interval(p - eps, p + eps, c, c) for p in self.points]
        for t in self.tails:
            ivs += _tail_dilation(t, eps, c)
        if self.naturals_from is not None:
            if eps > Fraction(1, 2) or (eps == Fraction(1, 2) and c):
                ivs.append(Interval(self.naturals_from - eps, INF, c, False))
            else:
                raise ValueError("dilation of a lattice by less than 1/2 is not representable")
        return RealSet.of(ivs)

    def open_dilate(self, eps) -> "RealSet":
        return self.dilate(eps, strict=True)

    # -- text / json ------------------------------------------------------

    def to_text(self) -> str:
        if self.is_empty():
            return "∅"
        parts = [iv.to_text() for iv in self.intervals]
        if self.points:
            parts.append("{" + ", ".join(str(p) for p in self.points) + "}")
        parts += [t.to_text() for t in self.tails]
        if self.naturals_from is not None:
            parts.append(f"nat(from={self.naturals_from})")
        return " ∪ ".join(parts)

    def __str__(self) -> str:
        return self.to_text()

    def to_json(self) -> list[dict]:
        out: list[dict] = []
        for iv in self.intervals:
            out.append({"kind": "interval", "lo": fmt_num(iv.lo), "hi": fmt_num(iv.hi),
                        "lo_closed": iv.lo_closed, "hi_closed": iv.hi_closed})
        for p in self.points:
            out.append({"kind": "point", "value": str(p)})
        for t in self.tails:
            out.append({"kind": "tail", "center": str(t.center), "coef": str(t.coef),
                        "ratio": str(t.ratio), "closed": t.closed})
        if self.naturals_from is not None:
            out.append({"kind": "naturals", "from": self.naturals_from})
        return out

    @classmethod
    def from_text(cls, text: str) -> "RealSet":
        from .dsl import parse_set

        return parse_set(text)


# -- atom-level helpers ---------------------------------------------------------


def interval(lo, hi, lo_closed: bool = True, hi_closed: bool = True) -> RealSet:
    return RealSet.of([Interval(lo, hi, lo_closed, hi_closed)])


def points(*ps) -> RealSet:
    return RealSet.of(points=ps)


def tail(c, q, start: int = 0, closed: bool = False, center=0) -> RealSet:
    return RealSet.of(tails=[Tail.make(c, q, start, closed, center)])


def naturals(start: int = 0) -> RealSet:
    return RealSet(naturals_from=start).normalize()


def _side_patterns(t: Tail, start: int, right_in: bool, left_in: bool) -> IndexPattern:
    """Indices ``j >= start`` whose member lies on an included side of the center."""
    progs = []
    if t.ratio > 0:
        if (t.coef > 0 and right_in) or (t.coef < 0 and left_in):
            progs.append((start, 1))
    else:
        for j in (start, start + 1):
            if (t.side(j) > 0 and right_in) or (t.side(j) < 0 and left_in):
                progs.append((j, 2))
    return IndexPattern(frozenset(), tuple(progs))


def _tail_vs_interval(t: Tail, iv: Interval) -> IndexPattern:
    c = t.center
    right_full = iv.lo <= c < iv.hi
    left_full = iv.lo < c <= iv.hi
    if right_full:
        rho_r = iv.hi - c
    elif iv.lo > c:
        rho_r = iv.lo - c
    else:
        rho_r = INF
    if left_full:
        rho_l = c - iv.lo
    elif iv.hi < c:
        rho_l = c - iv.hi
    else:
        rho_l = INF
    start = t.first_index_below(min(rho_r, rho_l))
    finite = frozenset(j for j in range(start) if iv.contains(t.member(j)))
    return IndexPattern(finite).union(_side_patterns(t, start, right_full, left_full))


def _tail_vs_tail(t: Tail, t2: Tail) -> IndexPattern:
    if t.center == t2.center:
        return geometric_matches(t.coef, t.ratio, t2.coef, t2.ratio)
    delta = abs(t.center - t2.center) / 2
    found = set()
    for j in range(t.first_index_below(delta)):
        if t2.contains(t.member(j)):
            found.add(j)
    for k in range(t2.first_index_below(delta)):
        j = t.index_of(t2.member(k))
        if j is not None:
            found.add(j)
    return IndexPattern(frozenset(found))


def _tail_vs_naturals(t: Tail, start: int) -> IndexPattern:
    c = t.center
    if c.denominator == 1:
        delta = Fraction(1)
    else:
        delta = min(c - math.floor(c), math.ceil(c) - c)
    found = set()
    for j in range(t.first_index_below(delta)):
        m = t.member(j)
        if m.denominator == 1 and m >= start:
            found.add(j)
    return IndexPattern(frozenset(found))


def _tail_distance(t: Tail, p: Fraction) -> Fraction:
    gap = abs(p - t.center)
    if gap == 0:
        return Fraction(0)
    best = gap
    stop = t.first_index_below(gap)
    for j in range(stop + 2):
        best = min(best, abs(p - t.member(j)))
    return best


def _tail_dilation(t: Tail, eps: Fraction, closed: bool) -> list[Interval]:
    c = t.center
    out = [Interval(c - eps, c + eps, closed, closed)]
    step = 1 if t.ratio > 0 else 2
    for first in range(step):
        # members on one side: dev(first + step*i), gaps shrink geometrically
        j = first
        limit = 0
        while True:
            g = abs(t.dev(j) - t.dev(j + step))
            near = abs(t.dev(j)) <= 2 * eps if closed else abs(t.dev(j)) < 2 * eps
            chained = g <= 2 * eps if closed else g < 2 * eps
            if chained and near:
                break
            out.append(Interval(t.member(j) - eps, t.member(j) + eps, closed, closed))
            j += step
            limit += 1
            if limit > _MAX_ENUM:
                raise RuntimeError("tail dilation did not stabilise")
        m = t.member(j)
        lo, hi = (min(c, m) - eps, max(c, m) + eps)
        out.append(Interval(lo, hi, closed, closed))
    return out


# -- Hausdorff distance -------------------------------------------------------


def _truncate(b: RealSet, cut: Fraction) -> tuple[RealSet, list[Interval]]:
    """Tail-free superset of closure(b): tail remainders below ``cut`` become hulls."""
    ivs = list(b.closure().intervals)
    pts = list(b.points)
    hulls = []
    for t in b.tails:
        k = t.first_index_below(cut)
        pts += [t.member(j) for j in range(k)] + [t.center]
        rest = Tail(t.center, t.dev(k), t.ratio, True).hull()
        hulls.append(rest)
        ivs.append(rest)
    return RealSet.of(ivs, pts, naturals_from=b.naturals_from), hulls


def _sup_dist_interval_tailfree(iv: Interval, b: RealSet) -> Fraction:
    lo, hi = Q(iv.lo), Q(iv.hi)
    cands = [lo, hi]
    feats: list[tuple[Fraction, Fraction]] = []
    for biv in b.intervals:
        feats.append((Q(biv.lo) if biv.lo != -INF else lo - 1, Q(biv.hi) if biv.hi != INF else hi + 1))
    feats += [(p, p) for p in b.points]
    if b.naturals_from is not None:
        n0 = b.naturals_from
        feats += [(Fraction(k), Fraction(k)) for k in range(n0, max(n0, math.ceil(hi)) + 2)]
    feats.sort()
    for (a0, a1), (b0, b1) in zip(feats, feats[1:]):
        if a1 < b0:
            mid = (a1 + b0) / 2
            if lo < mid < hi:
                cands.append(mid)
    return max(b.distance(x) for x in cands)


def _sup_dist_interval(iv: Interval, b: RealSet) -> Fraction:
    if RealSet.of([Interval(iv.lo, iv.hi)]).subset_of(b.closure()):
        return Fraction(0)
    if not b.tails:
        return _sup_dist_interval_tailfree(iv, b)
    cut = Fraction(1)
    for _ in range(_MAX_ENUM):
        approx, hulls = _truncate(b, cut)
        s = _sup_dist_interval_tailfree(iv, approx)
        width = max((h.hi - h.lo for h in hulls), default=Fraction(0))
        if s >= width:
            return s
        cut /= 2
    raise RuntimeError("interval sup distance did not converge")


def _sup_dist_tail(t: Tail, b: RealSet) -> Fraction:
    limit = b.distance(t.center)
    best = limit
    bc = b.closure()
    if limit == 0:
        pat = bc.tail_indices(t)
        thr, per = pat.period_data()
        cofinite_from = thr if all(n in pat for n in range(thr, thr + per)) and pat.progressions else None
    else:
        cofinite_from = None
        right = bc.contains(t.center + limit)
        left = bc.contains(t.center - limit)
        sides = {1} if t.ratio > 0 and t.coef > 0 else {-1} if t.ratio > 0 else {1, -1}
        near_ok = all((right if s > 0 else left) for s in sides)
    for j in range(_MAX_ENUM):
        d = abs(t.dev(j))
        if d <= best - limit and best > limit:
            return best
        if limit == 0 and cofinite_from is not None and j >= cofinite_from:
            return best
        if limit > 0 and near_ok and d < limit:
            return best
        best = max(best, b.distance(t.member(j)))
    raise RuntimeError("tail sup distance did not converge")


def sup_distance(a: RealSet, b: RealSet) -> Number:
    """``sup {d(x, b) : x in a}`` for nonempty bounded ``a``."""
    if a.is_empty() or b.is_empty():
        raise ValueError("sup distance needs nonempty sets")
    if not a.is_bounded():
        return INF
    vals = [b.distance(p) for p in a.points]
    vals += [_sup_dist_interval(iv, b) for iv in a.intervals]
    vals += [_sup_dist_tail(t, b) for t in a.tails]
    return max(vals)


def hausdorff_distance(a: RealSet, b: RealSet) -> Number:
    """Exact Hausdorff distance; ``math.inf`` when a side is unbounded."""
    if a.is_empty() or b.is_empty():
        raise ValueError("Hausdorff distance needs nonempty sets")
    if not (a.is_bounded() and b.is_bounded()):
        return Fraction(0) if a.closure() == b.closure() else INF
    return max(sup_distance(a, b), sup_distance(b, a))


def intersect_nonempty(a: RealSet, b: RealSet) -> bool:
    return a.intersects(b)


def closure(a: RealSet) -> RealSet:
    return a.closure()


def distance(p, a: RealSet) -> Fraction:
    return a.distance(p)


def subset_of(a: RealSet, b: RealSet) -> bool:
    return a.subset_of(b)


def dilate(a: RealSet, eps) -> RealSet:
    return a.dilate(eps)


def iter_members(t: Tail, n: int) -> Iterator[Fraction]:
    for j in range(n):
        yield t.member(j)
