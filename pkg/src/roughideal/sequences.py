"""Sequence specifications with exact prefixes and exact classical cluster/limit sets.

Most sequences are *assignments*: a finite partition of omega into symbolic index
cells, each carrying a geometric stream ``a + b*q**idx(n)`` where ``idx`` is the
position ``n``, the grid column, the grid row or the 2-adic valuation of ``n``.
For these, hit sets ``{n : x_n in A}`` are symbolic index sets, so ideal questions
about them reduce to omega_sets / ideals decisions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable

import numpy as np

from .exact_sets import INF, RealSet, Tail, fmt_num, interval, points, Q
from .ideals import IN, POSITIVE, UNKNOWN, IdealModel, membership
from .omega_sets import (
    AP, ALL, EVENS, ODDS, ColsFrom, Finite, IndexSetExpr, Inter, Not, Range, Stair,
    Undecidable, Union, index_array, index_value, level_set, max_constant,
    normalize, periodic_form, upper_set,
)

INDEXINGS = ("n", "col", "row", "v2")

EXACT, LOWER, EMPIRICAL = "Exact", "LowerBound", "Empirical"


class Unsupported(Exception):
    """No exact rule applies to this (sequence, ideal) combination."""


@dataclass(frozen=True)
class Stream:
    """``a + b*q**idx(n)``; ``b == 0`` is a constant value."""

    a: Fraction
    b: Fraction = Fraction(0)
    q: Fraction = Fraction(0)
    by: str = "n"

    def __post_init__(self):
        object.__setattr__(self, "a", Q(self.a))
        object.__setattr__(self, "b", Q(self.b))
        object.__setattr__(self, "q", Q(self.q))
        if self.by not in INDEXINGS:
            raise ValueError(f"unknown indexing {self.by!r}")
        if self.b != 0 and not (0 < abs(self.q) < 1):
            raise ValueError("stream ratio must satisfy 0 < |q| < 1")

    @property
    def constant(self) -> bool:
        return self.b == 0

    def value(self, j: int | None) -> Fraction:
        if self.constant or j is None:
            return self.a
        return self.a + self.b * self.q**j

    def tail(self, start: int = 0, closed: bool = False) -> Tail:
        return Tail.make(self.b, self.q, start, closed, center=self.a)

    def to_text(self) -> str:
        if self.constant:
            return fmt_num(self.a)
        return f"stream({fmt_num(self.a)},{fmt_num(self.b)},{fmt_num(self.q)},by={self.by})"


def const(v) -> Stream:
    return Stream(Q(v))


@dataclass(frozen=True)
class Cell:
    index: IndexSetExpr
    stream: Stream


class SequenceSpec:
    space: str = "real"
    bounded: bool = True

    def value(self, n: int) -> Fraction:
        raise NotImplementedError

    def prefix(self, N: int) -> list[Fraction]:
        if N < 1:
            raise ValueError("prefix length must be >= 1")
        return [self.value(n) for n in range(N)]

    def prefix_float(self, N: int) -> np.ndarray:
        return np.array([float(v) for v in self.prefix(N)])

    def assignment(self) -> "Assignment | None":
        return None

    def to_text(self) -> str:
        raise NotImplementedError

    def __str__(self) -> str:
        return self.to_text()


def evaluate_prefix(x: SequenceSpec, N: int) -> list[Fraction]:
    return x.prefix(N)


@dataclass(frozen=True)
class Assignment(SequenceSpec):
    cells: tuple[Cell, ...]
    default: Fraction = Fraction(0)
    space: str = "real"
    label: str | None = None  # DSL spelling for named forms

    def __post_init__(self):
        object.__setattr__(self, "default", Q(self.default))

    def all_cells(self) -> list[Cell]:
        """Cells including the default cell (the complement of the listed ones)."""
        out = list(self.cells)
        rest = Not(Union(tuple(c.index for c in self.cells))) if self.cells else ALL
        out.append(Cell(normalize(rest), const(self.default)))
        return out

    def value(self, n: int) -> Fraction:
        for c in self.cells:
            if c.index.contains(n):
                return c.stream.value(index_value(c.stream.by, n))
        return self.default

    def prefix_float(self, N: int) -> np.ndarray:
        out = np.full(N, float(self.default))
        done = np.zeros(N, dtype=bool)
        idx_cache: dict[str, np.ndarray] = {}
        for c in self.cells:
            m = c.index.mask(N) & ~done
            s = c.stream
            if s.constant:
                out[m] = float(s.a)
            else:
                if s.by not in idx_cache:
                    idx_cache[s.by] = index_array(s.by, N)
                j = idx_cache[s.by][m]
                vals = float(s.a) + float(s.b) * np.power(float(s.q), np.maximum(j, 0).astype(float))
                out[m] = np.where(j < 0, float(s.a), vals)
            done |= m
        return out

    def check_partition(self, N: int = 4096) -> bool:
        """Cells pairwise disjoint on the prefix (the default cell makes them exhaustive)."""
        tot = np.zeros(N, dtype=int)
        for c in self.cells:
            tot += c.index.mask(N)
        return bool((tot <= 1).all())

    def assignment(self) -> "Assignment":
        return self

    def to_text(self) -> str:
        if self.label:
            return self.label
        body = ", ".join(f"{c.index.to_text()} -> {c.stream.to_text()}" for c in self.cells)
        sep = ", " if body else ""
        return f"assign{{ {body}{sep}default {fmt_num(self.default)} }}"

    def values_closure(self) -> RealSet:
        """Closure of the value set (finitely many streams, each converging)."""
        out = RealSet.empty()
        for c in self.all_cells():
            s = c.stream
            out = out | (points(s.a) if s.constant else RealSet.of(tails=[s.tail(0, True)]))
        return out


def constant(c) -> Assignment:
    c = Q(c)
    return Assignment((), c, label=f"const({fmt_num(c)})")


def alternating() -> Assignment:
    return Assignment((Cell(EVENS, const(1)), Cell(ODDS, const(-1))), Fraction(0), label="alt")


def geometric(c, q) -> Assignment:
    c, q = Q(c), Q(q)
    return Assignment((Cell(ALL, Stream(0, c, q, "n")),), Fraction(0),
                      label=f"geo({fmt_num(c)},{fmt_num(q)})")


def periodic(pre: Iterable, cycle: Iterable) -> Assignment:
    pre, cycle = [Q(v) for v in pre], [Q(v) for v in cycle]
    if not cycle:
        raise ValueError("empty cycle")
    cells = [Cell(Finite(frozenset({i})), const(v)) for i, v in enumerate(pre)]
    L, T = len(cycle), len(pre)
    for r, v in enumerate(cycle):
        cells.append(Cell(AP(T + r, L), const(v)))
    pre_t = ",".join(fmt_num(v) for v in pre)
    cyc_t = ",".join(fmt_num(v) for v in cycle)
    return Assignment(tuple(cells), Fraction(0), label=f"periodic([{pre_t}],[{cyc_t}])")


def fubini() -> Assignment:
    """Model-space sequence: column index on even rows, row index on odd rows.

    The one-point compactification of omega is realised as ``{0} u {2^-k}``
    (``k -> 2^-k``, ``omega -> 0``).
    """
    return Assignment(
        (Cell(Stair(0, 0, 0), Stream(0, 1, Fraction(1, 2), "col")),
         Cell(Stair(0, 0, 1), Stream(0, 1, Fraction(1, 2), "row"))),
        Fraction(0), space="model", label="fubini")


def model_label(v: Fraction) -> str:
    """Name of a model-space point: ``0 -> omega``, ``2^-k -> k``."""
    v = Q(v)
    if v == 0:
        return "omega"
    if v > 0 and v.numerator == 1 and v.denominator & (v.denominator - 1) == 0:
        return str(v.denominator.bit_length() - 1)
    return fmt_num(v)


@dataclass(frozen=True)
class Natural(SequenceSpec):
    bounded: bool = False

    def value(self, n: int) -> Fraction:
        return Fraction(n)

    def prefix_float(self, N: int) -> np.ndarray:
        return np.arange(N, dtype=float)

    def to_text(self) -> str:
        return "nat"


def vdc_value(n: int) -> Fraction:
    """Base-2 radical inverse: reflect the binary digits of ``n`` about the point."""
    if n == 0:
        return Fraction(0)
    L = n.bit_length()
    rev = int(bin(n)[2:][::-1], 2)
    return Fraction(rev, 1 << L)


@dataclass(frozen=True)
class VanDerCorput(SequenceSpec):
    def value(self, n: int) -> Fraction:
        return vdc_value(n)

    def prefix_float(self, N: int) -> np.ndarray:
        n = np.arange(N, dtype=np.int64)
        out = np.zeros(N)
        scale = 0.5
        while n.any():
            out += (n & 1) * scale
            n >>= 1
            scale /= 2
        return out

    def to_text(self) -> str:
        return "vdc"


@dataclass(frozen=True)
class DenseCover(SequenceSpec):
    """Cyclic enumeration of a dense rational subset of a closed set ``C``.

    Components of ``C`` take turns by residue mod their count; an interval component
    ``[c, d]`` is enumerated as ``c + (d - c) * vdc(m)``, a point component is repeated.
    Every component thus occupies a residue class of positive density, and inside an
    interval the values are equidistributed.
    """

    C: RealSet

    def __post_init__(self):
        C = self.C
        if C.is_empty() or C.tails or C.naturals_from is not None:
            raise ValueError("dense covers need a nonempty finite union of points and intervals")
        if not (C.is_closed() and C.is_bounded()):
            raise ValueError("dense covers need a compact set")

    @property
    def components(self) -> list[tuple[Fraction, Fraction]]:
        comps = [(Q(iv.lo), Q(iv.hi)) for iv in self.C.intervals] + [(p, p) for p in self.C.points]
        return sorted(comps)

    def value(self, n: int) -> Fraction:
        comps = self.components
        lo, hi = comps[n % len(comps)]
        return lo + (hi - lo) * vdc_value(n // len(comps))

    def prefix_float(self, N: int) -> np.ndarray:
        comps = self.components
        p = len(comps)
        n = np.arange(N)
        t = VanDerCorput().prefix_float(N // p + 1)[n // p]
        lo = np.array([float(c[0]) for c in comps])[n % p]
        hi = np.array([float(c[1]) for c in comps])[n % p]
        return lo + (hi - lo) * t

    def to_text(self) -> str:
        return f"dense({self.C.to_text()})"


def dense_hits_status(x: DenseCover, I: IdealModel, A: RealSet) -> str:
    """Hit status per component: a repeated point or an interval part with interior."""
    comps = x.components
    p = len(comps)
    status = IN
    for i, (lo, hi) in enumerate(comps):
        part = A & interval(lo, hi)
        if part.is_empty():
            continue
        cls = membership(I, AP(i, p)) if p > 1 else membership(I, AP(0, 1))
        if lo == hi or any(iv.lo < iv.hi for iv in part.intervals):
            if cls == POSITIVE and I.kind in ("Fin", "Z"):
                return POSITIVE
            status = UNKNOWN
        elif part.tails:
            status = UNKNOWN
    return status


# -- hit sets -----------------------------------------------------------------------


def _pattern_to_index(pattern, by: str) -> IndexSetExpr:
    parts: list[IndexSetExpr] = []
    if pattern.finite:
        parts += [level_set(by, j) for j in sorted(pattern.finite)]
    for s, d in pattern.progressions:
        if by == "n":
            parts.append(AP(s, d))
        elif by == "col":
            parts.append(ColsFrom(s, d))
        elif by == "row" and d <= 2:
            parts.append(Stair(0, s, None if d == 1 else s % 2))
        elif by == "v2" and d == 1:
            parts.append(AP(2**s, 2**s) if s > 0 else AP(1, 1))
        else:
            raise Undecidable(f"index progression ({s},{d}) not representable for {by}")
    if not parts:
        return Finite()
    return parts[0] if len(parts) == 1 else Union(tuple(parts))


def stream_hits(s: Stream, A: RealSet) -> IndexSetExpr:
    """``{n : stream value at n lies in A}`` (within the whole of omega)."""
    if s.constant:
        return ALL if A.contains(s.a) else Finite()
    pat = A.tail_indices(s.tail())
    e = _pattern_to_index(pat, s.by)
    if s.by == "v2" and A.contains(s.a):
        e = e | Finite(frozenset({0}))
    return e


def hit_set(x: SequenceSpec, A: RealSet) -> IndexSetExpr:
    """Exact ``{n : x_n in A}`` for assignments and the natural sequence."""
    if isinstance(x, Natural):
        return _natural_hits(A)
    asg = x.assignment()
    if asg is None:
        raise Unsupported(f"hit sets of {x.to_text()} are not symbolic")
    parts = []
    for c in asg.all_cells():
        h = stream_hits(c.stream, A)
        if h == ALL:
            parts.append(c.index)
        elif not (isinstance(h, Finite) and not h.elems):
            parts.append(Inter((c.index, h)))
    if not parts:
        return Finite()
    return normalize(Union(tuple(parts))) if len(parts) > 1 else normalize(parts[0])


def _natural_hits(A: RealSet) -> IndexSetExpr:
    import math
    parts: list[IndexSetExpr] = []
    for iv in A.intervals:
        lo = max(0, math.ceil(iv.lo) if iv.lo != -INF else 0)
        if iv.lo != -INF and not iv.lo_closed and Q(iv.lo) == lo:
            lo += 1
        if iv.hi == INF:
            parts.append(AP(lo, 1))
        else:
            hi = math.floor(iv.hi)
            if not iv.hi_closed and Q(iv.hi) == hi:
                hi -= 1
            if hi >= lo:
                parts.append(Range(lo, hi + 1))
    pts = {int(p) for p in A.points if p.denominator == 1 and p >= 0}
    for t in A.tails:
        gap = Fraction(1) if t.center.denominator == 1 else min(
            t.center - math.floor(t.center), math.ceil(t.center) - t.center)
        for j in range(t.first_index_below(gap)):
            v = t.member(j)
            if v.denominator == 1 and v >= 0:
                pts.add(int(v))
        if t.closed and t.center.denominator == 1 and t.center >= 0:
            pts.add(int(t.center))
    if pts:
        parts.append(Finite(frozenset(pts)))
    if A.naturals_from is not None:
        parts.append(AP(max(0, A.naturals_from), 1))
    if not parts:
        return Finite()
    return normalize(Union(tuple(parts))) if len(parts) > 1 else parts[0]


def _dyadic(v: Fraction) -> bool:
    d = v.denominator
    return d & (d - 1) == 0


def vdc_hits_status(I: IdealModel, A: RealSet) -> str:
    """Ideal status of ``{n : vdc_n in A}`` via equidistribution and dyadic counting."""
    inside = A & interval(0, 1, True, False)
    for iv in inside.intervals:
        if iv.lo < iv.hi:
            return POSITIVE if I.kind in ("Fin", "Z") else UNKNOWN
    infinite = False
    for t in inside.tails:
        if _dyadic(t.center) and _dyadic(t.coef) and _dyadic(t.ratio) and t.ratio.numerator in (1, -1):
            infinite = True
        elif not (_dyadic(t.center) and _dyadic(t.coef)):
            return UNKNOWN
    if inside.naturals_from is not None and inside.naturals_from <= 0:
        pass  # only the point 0, counted below
    if I.kind == "Fin":
        return POSITIVE if infinite else IN
    if I.kind == "Z":
        return IN  # null closed sets have zero hit density
    return UNKNOWN


def hit_status(x: SequenceSpec, I: IdealModel, A: RealSet) -> str:
    """``In`` / ``Positive`` / ``Unknown`` for ``{n : x_n in A}``."""
    if isinstance(x, VanDerCorput):
        return vdc_hits_status(I, A)
    if isinstance(x, DenseCover):
        return dense_hits_status(x, I, A)
    try:
        return membership(I, hit_set(x, A))
    except (Undecidable, Unsupported):
        return UNKNOWN


# -- classical cluster / limit sets ---------------------------------------------------


@dataclass
class ClusterReport:
    set: RealSet
    exactness: str
    note: str = ""
    outer: RealSet | None = None

    def to_text(self) -> str:
        return f"{self.set.to_text()} [{self.exactness}]"


def _positive(I: IdealModel, S: IndexSetExpr) -> bool:
    m = membership(I, S)
    if m == UNKNOWN:
        raise Undecidable(f"{I.kind} membership of {S}")
    return m == POSITIVE


def _stable_index(cell: IndexSetExpr, by: str) -> int:
    """Index beyond which positivity of level/upper sets within the cell is 2-periodic."""
    if by == "v2":
        try:
            L = periodic_form(cell).period
        except Undecidable:
            L = 1
        e = (L & -L).bit_length() - 1
        return e + 2
    c = max_constant(cell)
    for a in cell.atoms():
        if isinstance(a, ColsFrom):
            c = max(c, a.k0 + a.step)
    return 2 * c + 4


def _index_period(cell: IndexSetExpr, by: str) -> int:
    """Period in the stream index of level-set positivity past the stable index."""
    if by in ("n", "v2"):
        return 1
    P = 2
    for a in cell.atoms():
        if isinstance(a, AP):
            P = P * 2 * a.d // gcd(P, 2 * a.d)
        elif isinstance(a, ColsFrom):
            P = P * a.step // gcd(P, a.step)
    return P


def _cell_cluster(I: IdealModel, cell: Cell) -> tuple[RealSet, bool]:
    """(cluster points contributed by the cell's stream values, limit-tail positive)."""
    s = cell.stream
    if s.constant:
        return (points(s.a) if _positive(I, cell.index) else RealSet.empty()), False
    J = _stable_index(cell.index, s.by)
    below = [_positive(I, Inter((cell.index, level_set(s.by, j)))) for j in range(J)]
    tail_pos = _positive(I, Inter((cell.index, upper_set(s.by, J))))
    P = _index_period(cell.index, s.by)
    lev = [_positive(I, Inter((cell.index, level_set(s.by, J + r)))) for r in range(P)]
    if all(lev):
        while J > 0 and below[J - 1]:
            J -= 1
    out = points(*[s.value(j) for j in range(J) if below[j]])
    if all(lev):
        out = out | RealSet.of(tails=[s.tail(J, True)])
    else:
        for r in range(P):
            if lev[r]:
                out = out | RealSet.of(tails=[Tail(s.a, s.b * s.q ** (J + r), s.q**P, True)])
    return out, tail_pos


def cluster_set(x: SequenceSpec, I: IdealModel) -> ClusterReport:
    """Classical ``Gamma_x(I)``."""
    if isinstance(x, Natural):
        return ClusterReport(RealSet.empty(), EXACT, "every bounded window is hit finitely often")
    if isinstance(x, DenseCover) and I.kind in ("Fin", "Z"):
        return ClusterReport(x.C, EXACT, "each component is densely hit on a residue class")
    if isinstance(x, VanDerCorput):
        if I.kind in ("Fin", "Z"):
            return ClusterReport(interval(0, 1), EXACT,
                                 "every open subinterval of [0,1] has positive hit density")
        return _empirical_cluster(x, I)
    asg = x.assignment()
    if asg is None:
        return _empirical_cluster(x, I)
    try:
        out = RealSet.empty()
        limits: dict[Fraction, bool] = {}
        for c in asg.all_cells():
            pts, tail_pos = _cell_cluster(I, c)
            out = out | pts
            if not c.stream.constant:
                limits[c.stream.a] = limits.get(c.stream.a, False) or tail_pos
        for a, pos in limits.items():
            if pos:
                out = out | points(a)
        return ClusterReport(out, EXACT, "level and tail sets of finitely many streams")
    except Undecidable as exc:
        rep = _empirical_cluster(x, I)
        rep.note += f"; exact rule undecided ({exc})"
        return rep


def _drop_limit(pts: RealSet, a: Fraction) -> RealSet:
    """Reopen tails accumulating at ``a`` and drop the point ``a`` itself."""
    from dataclasses import replace
    tails = [replace(t, closed=False) if t.center == a else t for t in pts.tails]
    return RealSet(pts.intervals, tuple(p for p in pts.points if p != a), tuple(tails),
                   pts.naturals_from).normalize()


def _limit_tail_verdict(I: IdealModel, cell: Cell) -> tuple[bool | None, str]:
    """Is there a positive S inside the cell along which the stream tends to its limit?"""
    s, A = cell.stream, cell.index
    J = _stable_index(A, s.by)
    if not _positive(I, Inter((A, upper_set(s.by, J)))):
        return False, "tail set not positive"
    if I.kind == "Fin":
        return True, "diagonal selection (Fin is P+)"
    if s.by == "n":
        return True, "the cell itself converges"
    if s.by == "col":
        if I.kind == "FinxFin":
            return False, "pseudo-intersections of cols(J..) have finite columns"
        S = Inter((A, Not(Stair(1, 1))))
        return (True, "witness cell & {m <= k}") if membership(I, S) == POSITIVE else (None, "no witness")
    if s.by == "row":
        S = Inter((A, Stair(1, 0)))
        return (True, "witness cell & {m >= k}") if membership(I, S) == POSITIVE else (None, "no witness")
    if I.kind == "Z":
        return False, "pseudo-intersections of 2^J omega have density 0"
    return None, "no witness"


def limit_point_set(x: SequenceSpec, I: IdealModel) -> ClusterReport:
    """Classical ``Lambda_x(I)``: exact where decided, else a lower bound with Gamma as outer bound."""
    if isinstance(x, Natural):
        return ClusterReport(RealSet.empty(), EXACT, "no bounded subsequence")
    if isinstance(x, DenseCover) and I.kind in ("Fin", "Z"):
        if I.kind == "Fin":
            return ClusterReport(x.C, EXACT, "every point of C is approached along a subsequence")
        pts = [lo for lo, hi in x.components if lo == hi]
        return ClusterReport(points(*pts), EXACT,
                             "repeated points only; equidistributed parts have no statistical limits")
    if isinstance(x, VanDerCorput):
        if I.kind == "Fin":
            return ClusterReport(interval(0, 1), EXACT, "every point of [0,1] is a classical limit point")
        if I.kind == "Z":
            return ClusterReport(RealSet.empty(), EXACT,
                                 "equidistributed sequences have no statistical limit points (cited)")
        gam = cluster_set(x, I)
        return ClusterReport(RealSet.empty(), LOWER, "no rule", gam.set)
    asg = x.assignment()
    gam = cluster_set(x, I)
    if asg is None or gam.exactness != EXACT:
        return ClusterReport(RealSet.empty(), LOWER, "no exact rule", gam.set)
    try:
        out = RealSet.empty()
        undecided = []
        limits: dict[Fraction, bool | None] = {}
        for c in asg.all_cells():
            s = c.stream
            if s.constant:
                if _positive(I, c.index):
                    out = out | points(s.a)
                continue
            # isolated values: a constant subsequence on a positive level set
            pts, _ = _cell_cluster(I, c)
            out = out | _drop_limit(pts, s.a)
            v, _why = _limit_tail_verdict(I, c)
            prev = limits.get(s.a, False)
            limits[s.a] = True if (prev or v) else (None if (prev is None or v is None) else False)
        for a, v in limits.items():
            if v:
                out = out | points(a)
            elif v is None and a not in out:
                undecided.append(a)
        if undecided:
            return ClusterReport(out, LOWER, f"undecided limits {[fmt_num(a) for a in undecided]}", gam.set)
        return ClusterReport(out, EXACT, "positive level sets and convergent witnesses")
    except Undecidable as exc:
        return ClusterReport(RealSet.empty(), LOWER, f"undecided ({exc})", gam.set)


def _empirical_cluster(x: SequenceSpec, I: IdealModel) -> ClusterReport:
    from .oracle import OracleConfig, empirical_cluster_set
    cfg = OracleConfig()
    s = empirical_cluster_set(x, I, cfg)
    return ClusterReport(s, EMPIRICAL, f"oracle prefix N={cfg.prefix}, step={cfg.grid_step}")
