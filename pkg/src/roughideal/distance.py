"""Exact distance sequences ``d(x_n, A)`` and the distance criterion for limit points.

For a closed ball (or any closed set in a space where disjoint closed sets are at
positive distance), ``eta`` is a rough limit point iff ``0`` is a classical limit point
of ``n -> d(x_n, F_eta)``.  For assignments of geometric streams the distance sequence
is again such an assignment: near each stream limit the distance function is affine on
either side, so past a computable index the distances form a new geometric stream.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact_sets import RealSet, fmt_num, interval
from .ideals import IdealModel
from .omega_sets import (
    AP, ColsFrom, IndexSetExpr, Inter, Not, Stair, Undecidable, Union, level_set,
    normalize, upper_set,
)
from .rough_families import Ball, Degenerate, RoughFamily
from .sequences import (
    EXACT, Assignment, Cell, Natural, SequenceSpec, Stream, VanDerCorput, const,
    limit_point_set,
)


class Refusal(Exception):
    """The distance criterion is not available for this family shape."""


@dataclass(frozen=True)
class DistanceVerdict:
    member: bool | None
    rule: str
    detail: str = ""


def disjoint_cells(asg: Assignment) -> list[Cell]:
    """Cells made pairwise disjoint in first-match order, default cell last."""
    out, seen = [], []
    for c in asg.all_cells():
        idx = c.index if not seen else normalize(Inter((c.index, Not(Union(tuple(seen))))))
        out.append(Cell(idx, c.stream))
        seen.append(c.index)
    return out


def _breakpoints(A: RealSet) -> list[Fraction]:
    comps = sorted([(iv.lo, iv.hi) for iv in A.intervals] + [(p, p) for p in A.points])
    out: list[Fraction] = []
    for i, (lo, hi) in enumerate(comps):
        out += [lo, hi]
        if i + 1 < len(comps):
            out.append((hi + comps[i + 1][0]) / 2)
    return out


def _parity_sets(by: str) -> tuple[IndexSetExpr, IndexSetExpr]:
    if by == "n":
        return AP(0, 2), AP(1, 2)
    if by == "col":
        return ColsFrom(0, 2), ColsFrom(1, 2)
    if by == "row":
        return Stair(0, 0, 0), Stair(0, 0, 1)
    raise Undecidable("parity of the 2-adic valuation is not representable")


def _stream_distance_cells(eff: IndexSetExpr, s: Stream, A: RealSet) -> list[Cell]:
    a = s.a
    d0 = A.distance(a)
    others = [abs(b - a) for b in _breakpoints(A) if b != a]
    delta = min(others) if others else Fraction(1)
    J0 = s.tail().first_index_below(delta)
    h = delta / 2
    slope_pos = (A.distance(a + h) - d0) / h
    slope_neg = (A.distance(a - h) - d0) / h
    cells = [Cell(normalize(Inter((eff, level_set(s.by, j)))), const(A.distance(s.value(j))))
             for j in range(J0)]
    tail_idx = normalize(Inter((eff, upper_set(s.by, J0))))
    side0 = 1 if s.b > 0 else -1

    def stream(slope: Fraction) -> Stream:
        return const(d0) if slope == 0 else Stream(d0, slope * abs(s.b), abs(s.q), s.by)

    if s.q > 0:
        cells.append(Cell(tail_idx, stream(slope_pos if side0 > 0 else slope_neg)))
    elif slope_pos == slope_neg:
        cells.append(Cell(tail_idx, stream(slope_pos)))
    else:
        even, odd = _parity_sets(s.by)
        s_even = slope_pos if side0 > 0 else slope_neg
        s_odd = slope_neg if side0 > 0 else slope_pos
        cells.append(Cell(normalize(Inter((tail_idx, even))), stream(s_even)))
        cells.append(Cell(normalize(Inter((tail_idx, odd))), stream(s_odd)))
    return cells


def distance_sequence(x: SequenceSpec, A: RealSet) -> Assignment:
    """``n -> d(x_n, A)`` for an assignment and a closed set of points and intervals."""
    asg = x.assignment()
    if asg is None:
        raise Refusal(f"{x.to_text()} is not an assignment")
    if A.tails or A.naturals_from is not None or not A.is_closed() or A.is_empty():
        raise Refusal("distance sequences need a nonempty closed union of points and intervals")
    cells: list[Cell] = []
    for c in disjoint_cells(asg):
        if c.stream.constant:
            cells.append(Cell(c.index, const(A.distance(c.stream.a))))
        else:
            cells += _stream_distance_cells(c.index, c.stream, A)
    return Assignment(tuple(cells), A.distance(asg.default))


def _criterion_applies(F: RoughFamily, A: RealSet, model: bool) -> bool:
    if model:
        return A.is_closed()
    if isinstance(F, Degenerate):
        return True
    if isinstance(F, Ball) and F.closed:
        return True
    # any closed bounded interval or single point is a closed ball
    return A.is_closed() and not A.tails and A.naturals_from is None and (
        len(A.intervals) + len(A.points) == 1) and A.is_bounded()


def lambda_via_distance(x: SequenceSpec, eta, F: RoughFamily, I: IdealModel) -> DistanceVerdict:
    """Decide ``eta in Lambda_x(I, F)`` through ``0 in Lambda_{d(x, F_eta)}(I)``."""
    A = F.at(eta)
    model = getattr(x, "space", "real") == "model" or F.space.name == "model"
    if not _criterion_applies(F, A, model):
        raise Refusal("F_eta is not a closed ball and the real line lacks the UC property; "
                      "the distance criterion can fail (see the non-UC construction)")
    if isinstance(x, Natural):
        if A.is_bounded():
            return DistanceVerdict(False, "distance", "d(n, F_eta) -> infinity")
        return DistanceVerdict(None, "distance", "unbounded F_eta")
    if isinstance(x, VanDerCorput):
        inside = A & interval(0, 1)
        if I.kind == "Fin":
            return DistanceVerdict(not inside.is_empty(), "distance",
                                   "dense values: 0 is a limit of d iff F_eta meets [0,1]")
        if I.kind == "Z":
            fat = any(iv.lo < iv.hi for iv in inside.intervals)
            return DistanceVerdict(fat, "distance",
                                   "equidistribution: {d < e} has density |F_eta^e n [0,1]|, "
                                   "which tends to |F_eta n [0,1]|")
        return DistanceVerdict(None, "distance", "no density rule for this ideal")
    try:
        d = distance_sequence(x, A)
        rep = limit_point_set(d, I)
    except Undecidable as exc:
        return DistanceVerdict(None, "distance", f"undecided ({exc})")
    has0 = rep.set.contains(0)
    if rep.exactness == EXACT or has0:
        return DistanceVerdict(has0, "distance", f"Lambda_d = {rep.set.to_text()}")
    return DistanceVerdict(None, "distance", f"Lambda_d only bounded below by {rep.set.to_text()}")


def distance_text(d: Assignment) -> str:
    return d.to_text() if d.cells else f"const({fmt_num(d.default)})"
