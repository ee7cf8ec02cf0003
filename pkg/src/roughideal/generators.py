"""Seeded random scenario generators for property and differential testing."""

from __future__ import annotations

import random
from fractions import Fraction

from .exact_sets import INF
from .piecewise import Piece, RadiusFunction
from .rough_families import Ball
from .sequences import Assignment, periodic

DENOMINATORS = (1, 2, 3, 4, 5, 8)


def rational(rng: random.Random, lo: Fraction, hi: Fraction,
             denominators=DENOMINATORS) -> Fraction:
    d = rng.choice(denominators)
    k_lo, k_hi = -int(-lo * d // 1), int(hi * d // 1)
    return Fraction(rng.randint(k_lo, k_hi), d)


def eventually_periodic(rng: random.Random, n_values: int = 5, lo=-2, hi=2,
                        max_pre: int = 4, max_cycle: int = 5) -> Assignment:
    """Prefix then cycle, drawn from at most ``n_values`` rationals in ``[lo, hi]``."""
    lo, hi = Fraction(lo), Fraction(hi)
    pool = sorted({rational(rng, lo, hi) for _ in range(rng.randint(1, n_values))})
    pre = [rng.choice(pool) for _ in range(rng.randint(0, max_pre))]
    cycle = [rng.choice(pool) for _ in range(rng.randint(1, max_cycle))]
    return periodic(pre, cycle)


def piecewise_constant_radius(rng: random.Random, max_pieces: int = 4, lo=-4, hi=4,
                              r_max=1) -> RadiusFunction:
    """At most ``max_pieces`` constant pieces with values in ``[0, r_max]``."""
    n = rng.randint(1, max_pieces)
    cuts = sorted({rational(rng, Fraction(lo), Fraction(hi), (1, 2, 4)) for _ in range(n - 1)})
    ends = [-INF] + cuts + [INF]
    pieces = []
    lo_closed = False
    for a, b in zip(ends, ends[1:]):
        last = b == INF
        hi_closed = False if last else rng.random() < 0.5
        pieces.append(Piece(a, b, lo_closed, hi_closed,
                            rational(rng, Fraction(0), Fraction(r_max), (1, 2, 4, 8))))
        lo_closed = not hi_closed
    return RadiusFunction(tuple(pieces))


def random_ball_scenario(rng: random.Random) -> tuple[Assignment, Ball]:
    return eventually_periodic(rng), Ball(piecewise_constant_radius(rng), closed=True)


def stream_mixture(rng: random.Random, max_classes: int = 4, lo=-2, hi=2) -> Assignment:
    """Residue classes mod ``p`` carrying constants or geometric streams ``a + b q^n``."""
    from .omega_sets import AP
    from .sequences import Cell, Stream, const

    lo, hi = Fraction(lo), Fraction(hi)
    p = rng.randint(1, max_classes)
    cells = []
    for r in range(p):
        a = rational(rng, lo, hi, (1, 2, 4))
        if rng.random() < 0.4:
            cells.append(Cell(AP(r, p), const(a)))
        else:
            b = Fraction(rng.choice((-1, 1)), 2 ** rng.randint(0, 3))
            q = Fraction(rng.choice((-1, 1)), rng.choice((2, 3)))
            cells.append(Cell(AP(r, p), Stream(a, b, q, "n")))
    return Assignment(tuple(cells), Fraction(0), label=f"mix{p}")
