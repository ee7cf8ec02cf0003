"""Symbolic subsets of the naturals and of the grid ``omega x omega``.

Two decidable fragments are supported:

* the *linear* fragment, built from finite sets, arithmetic progressions and
  ranges with ``| & !``.  Every such set is eventually periodic, so finiteness,
  cardinality and natural density are exact.
* the *grid* fragment, built from columns, rows and staircases of the grid
  (pulled back to the naturals through the Cantor pairing) plus finite sets.
  Column finiteness, finiteness and membership in ``Fin x Fin`` are exact;
  natural density is only bracketed.  Column finiteness and ``Fin x Fin``
  membership extend to mixed expressions, since linear atoms are periodic in
  both grid coordinates.

Anything else raises :class:`Undecidable` instead of guessing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, isqrt

import numpy as np


class Undecidable(Exception):
    """The expression lies outside the fragment the requested procedure decides."""


def cantor_pair(k: int, m: int) -> int:
    """Inverse of :func:`cantor_unpair`; ``(0, 0) -> 0``."""
    w = k + m
    return w * (w + 1) // 2 + m


def cantor_unpair(n: int) -> tuple[int, int]:
    """The fixed bijection ``omega -> omega x omega`` as ``(column k, row m)``."""
    w = (isqrt(8 * n + 1) - 1) // 2
    m = n - w * (w + 1) // 2
    return w - m, m


def cantor_unpair_array(n: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n = np.asarray(n, dtype=np.int64)
    w = ((np.sqrt(8.0 * n + 1) - 1) // 2).astype(np.int64)
    # float sqrt can be off by one for large n
    w = np.where(w * (w + 1) // 2 > n, w - 1, w)
    w = np.where((w + 1) * (w + 2) // 2 <= n, w + 1, w)
    m = n - w * (w + 1) // 2
    return w - m, m


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@dataclass(frozen=True)
class Finiteness:
    finite: bool
    card: int | None = None

    def __str__(self) -> str:
        return f"Finite({self.card})" if self.finite else "Infinite"


@dataclass(frozen=True)
class Density:
    """Exact density (``lower == upper``) or a bracket with prefix evidence."""

    lower: Fraction
    upper: Fraction
    estimate: float | None = None
    prefix: int | None = None

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    @property
    def value(self) -> Fraction:
        if not self.exact:
            raise Undecidable("density is only bracketed")
        return self.lower


class IndexSetExpr:
    """Base class; subclasses are immutable expression nodes."""

    def __or__(self, other: "IndexSetExpr") -> "IndexSetExpr":
        return Union((self, other))

    def __and__(self, other: "IndexSetExpr") -> "IndexSetExpr":
        return Inter((self, other))

    def __invert__(self) -> "IndexSetExpr":
        return Not(self)

    def __contains__(self, n: int) -> bool:
        return self.contains(n)

    # subclasses implement: contains, _mask, atoms, to_text, _grid
    def contains(self, n: int) -> bool:
        raise NotImplementedError

    def mask(self, N: int) -> np.ndarray:
        """Boolean membership vector for ``0..N-1``."""
        n = np.arange(N, dtype=np.int64)
        k, m = cantor_unpair_array(n)
        return self._mask(n, k, m)

    def _mask(self, n, k, m) -> np.ndarray:
        raise NotImplementedError

    def atoms(self) -> list["IndexSetExpr"]:
        return [self]

    def grid_contains(self, k: int, m: int) -> bool:
        return self.contains(cantor_pair(k, m))

    def to_text(self) -> str:
        raise NotImplementedError

    def __str__(self) -> str:
        return self.to_text()

    def elements(self, N: int) -> list[int]:
        return [int(i) for i in np.flatnonzero(self.mask(N))]

    # fragment tests
    def is_linear(self) -> bool:
        return all(isinstance(a, (Finite, AP, Range)) for a in self.atoms())

    def is_grid(self) -> bool:
        return all(isinstance(a, (Finite, Col, ColsFrom, Row, Stair)) for a in self.atoms())


# -- linear atoms ---------------------------------------------------------------


@dataclass(frozen=True)
class Finite(IndexSetExpr):
    elems: frozenset[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "elems", frozenset(int(e) for e in self.elems))
        if any(e < 0 for e in self.elems):
            raise ValueError("negative index")

    def contains(self, n: int) -> bool:
        return n in self.elems

    def _mask(self, n, k, m):
        out = np.zeros(len(n), dtype=bool)
        idx = [e for e in self.elems if e < len(n)]
        out[idx] = True
        return out

    def to_text(self) -> str:
        if not self.elems:
            return "none"
        return "fin{" + ", ".join(str(e) for e in sorted(self.elems)) + "}"


@dataclass(frozen=True)
class AP(IndexSetExpr):
    """``{a + d*i : i >= 0}``."""

    a: int
    d: int

    def __post_init__(self):
        if self.a < 0 or self.d < 1:
            raise ValueError("progression needs a >= 0 and d >= 1")

    def contains(self, n: int) -> bool:
        return n >= self.a and (n - self.a) % self.d == 0

    def _mask(self, n, k, m):
        return (n >= self.a) & ((n - self.a) % self.d == 0)

    def to_text(self) -> str:
        if (self.a, self.d) == (0, 1):
            return "all"
        if (self.a, self.d) == (0, 2):
            return "evens"
        if (self.a, self.d) == (1, 2):
            return "odds"
        return f"ap({self.a},{self.d})"


@dataclass(frozen=True)
class Range(IndexSetExpr):
    """``[lo, hi)``."""

    lo: int
    hi: int

    def contains(self, n: int) -> bool:
        return self.lo <= n < self.hi

    def _mask(self, n, k, m):
        return (n >= self.lo) & (n < self.hi)

    def to_text(self) -> str:
        return f"range({self.lo},{self.hi})"


ALL = AP(0, 1)
NONE = Finite()
EVENS = AP(0, 2)
ODDS = AP(1, 2)


# -- grid atoms -------------------------------------------------------------------


@dataclass(frozen=True)
class Col(IndexSetExpr):
    k: int

    def contains(self, n):
        return cantor_unpair(n)[0] == self.k

    def grid_contains(self, k, m):
        return k == self.k

    def _mask(self, n, k, m):
        return k == self.k

    def to_text(self):
        return f"col({self.k})"


@dataclass(frozen=True)
class ColsFrom(IndexSetExpr):
    """Columns ``k >= k0`` with ``k = k0 (mod step)``."""

    k0: int
    step: int = 1

    def __post_init__(self):
        if self.k0 < 0 or self.step < 1:
            raise ValueError("cols needs k0 >= 0 and step >= 1")

    def _has(self, k):
        return (k >= self.k0) & ((k - self.k0) % self.step == 0)

    def contains(self, n):
        return bool(self._has(cantor_unpair(n)[0]))

    def grid_contains(self, k, m):
        return bool(self._has(k))

    def _mask(self, n, k, m):
        return self._has(k)

    def to_text(self):
        if self.step == 1:
            return f"cols({self.k0}..)"
        return f"cols({self.k0}.., step={self.step})"


@dataclass(frozen=True)
class Row(IndexSetExpr):
    m: int

    def contains(self, n):
        return cantor_unpair(n)[1] == self.m

    def grid_contains(self, k, m):
        return m == self.m

    def _mask(self, n, k, m):
        return m == self.m

    def to_text(self):
        return f"row({self.m})"


@dataclass(frozen=True)
class Stair(IndexSetExpr):
    """``{(k, m) : m >= slope*k + offset}``, optionally restricted to a parity of ``m``."""

    slope: int = 1
    offset: int = 0
    parity: int | None = None

    def __post_init__(self):
        if self.slope < 0:
            raise ValueError("staircase slope must be >= 0")
        if self.parity not in (None, 0, 1):
            raise ValueError("parity must be 0, 1 or None")

    def threshold(self, k: int) -> int:
        return self.slope * k + self.offset

    def grid_contains(self, k, m):
        if m < self.threshold(k):
            return False
        return self.parity is None or m % 2 == self.parity

    def contains(self, n):
        return self.grid_contains(*cantor_unpair(n))

    def _mask(self, n, k, m):
        out = m >= self.slope * k + self.offset
        if self.parity is not None:
            out &= (m % 2 == self.parity)
        return out

    def to_text(self):
        if self.slope == 0:
            rhs = str(self.offset)
        else:
            rhs = "k" if self.slope == 1 else f"{self.slope}k"
            if self.offset > 0:
                rhs += f"+{self.offset}"
            elif self.offset < 0:
                rhs += f"-{-self.offset}"
        par = {None: "", 0: ", even", 1: ", odd"}[self.parity]
        return f"stair(m>={rhs}{par})"


# -- combinators --------------------------------------------------------------------


@dataclass(frozen=True)
class Union(IndexSetExpr):
    parts: tuple[IndexSetExpr, ...]

    def contains(self, n):
        return any(p.contains(n) for p in self.parts)

    def grid_contains(self, k, m):
        return any(p.grid_contains(k, m) for p in self.parts)

    def _mask(self, n, k, m):
        return reduce(np.logical_or, (p._mask(n, k, m) for p in self.parts))

    def atoms(self):
        return [a for p in self.parts for a in p.atoms()]

    def to_text(self):
        return " | ".join(_paren(p, Union) for p in self.parts)


@dataclass(frozen=True)
class Inter(IndexSetExpr):
    parts: tuple[IndexSetExpr, ...]

    def contains(self, n):
        return all(p.contains(n) for p in self.parts)

    def grid_contains(self, k, m):
        return all(p.grid_contains(k, m) for p in self.parts)

    def _mask(self, n, k, m):
        return reduce(np.logical_and, (p._mask(n, k, m) for p in self.parts))

    def atoms(self):
        return [a for p in self.parts for a in p.atoms()]

    def to_text(self):
        return " & ".join(_paren(p, (Union, Inter)) for p in self.parts)


@dataclass(frozen=True)
class Not(IndexSetExpr):
    inner: IndexSetExpr

    def contains(self, n):
        return not self.inner.contains(n)

    def grid_contains(self, k, m):
        return not self.inner.grid_contains(k, m)

    def _mask(self, n, k, m):
        return ~self.inner._mask(n, k, m)

    def atoms(self):
        return self.inner.atoms()

    def to_text(self):
        return "!" + _paren(self.inner, (Union, Inter, Not))


def _paren(e: IndexSetExpr, kinds) -> str:
    text = e.to_text()
    return f"({text})" if isinstance(e, kinds) else text


def normalize(e: IndexSetExpr) -> IndexSetExpr:
    """Push negations to atoms (De Morgan), flatten nested unions/intersections and drop
    identities, duplicates and complementary pairs."""
    if isinstance(e, Not):
        inner = e.inner
        if isinstance(inner, Not):
            return normalize(inner.inner)
        if isinstance(inner, Union):
            return normalize(Inter(tuple(Not(p) for p in inner.parts)))
        if isinstance(inner, Inter):
            return normalize(Union(tuple(Not(p) for p in inner.parts)))
        if inner == ALL:
            return NONE
        if inner == NONE:
            return ALL
        return e
    if isinstance(e, (Union, Inter)):
        kind = type(e)
        unit, zero = (NONE, ALL) if kind is Union else (ALL, NONE)
        flat: list[IndexSetExpr] = []
        for p in e.parts:
            p = normalize(p)
            for q in (p.parts if isinstance(p, kind) else (p,)):
                if q == zero:
                    return zero
                if q != unit and q not in flat:
                    flat.append(q)
        for q in flat:
            if normalize(Not(q)) in flat:
                return zero
        if not flat:
            return unit
        if len(flat) == 1:
            return flat[0]
        out = kind(tuple(flat))
        if out.is_linear():
            pf = periodic_form(out)
            if not pf.prefix and not any(pf.bits):
                return NONE
            if len(pf.prefix) == pf.threshold and all(pf.bits):
                return ALL
        return out
    return e


# -- linear fragment decisions -----------------------------------------------------


@dataclass(frozen=True)
class PeriodicForm:
    """Eventually periodic description: ``prefix`` below ``threshold``, then ``bits`` repeat."""

    threshold: int
    period: int
    bits: tuple[bool, ...]
    prefix: frozenset[int]

    def contains(self, n: int) -> bool:
        if n < self.threshold:
            return n in self.prefix
        return self.bits[(n - self.threshold) % self.period]


def periodic_form(e: IndexSetExpr) -> PeriodicForm:
    if not e.is_linear():
        raise Undecidable(f"not in the linear fragment: {e}")
    period, threshold = 1, 0
    for a in e.atoms():
        if isinstance(a, AP):
            period = _lcm(period, a.d)
            threshold = max(threshold, a.a)
        elif isinstance(a, Finite):
            threshold = max(threshold, max(a.elems, default=-1) + 1)
        elif isinstance(a, Range):
            threshold = max(threshold, a.hi, a.lo)
    prefix = frozenset(n for n in range(threshold) if e.contains(n))
    bits = tuple(e.contains(threshold + i) for i in range(period))
    return PeriodicForm(threshold, period, bits, prefix)


# -- grid fragment decisions --------------------------------------------------------


def _grid_atoms(e: IndexSetExpr):
    if not e.is_grid():
        raise Undecidable(f"not in the grid fragment: {e}")
    return e.atoms()


def _stable_column(e: IndexSetExpr) -> int:
    """Beyond this column, eventual row patterns depend only on ``k mod 2L``."""
    K = 0
    for a in e.atoms():
        if isinstance(a, Col):
            K = max(K, a.k + 1)
        elif isinstance(a, ColsFrom):
            K = max(K, a.k0)
        elif isinstance(a, Finite):
            K = max([K] + [cantor_unpair(x)[0] + 1 for x in a.elems])
    return K


def _column_height(e: IndexSetExpr, k: int) -> int:
    """Row index beyond which column ``k`` of ``e`` is 2-periodic in ``m``."""
    h = 0
    for a in e.atoms():
        if isinstance(a, Row):
            h = max(h, a.m + 1)
        elif isinstance(a, Stair):
            h = max(h, a.threshold(k) + 1)
        elif isinstance(a, Finite):
            h = max([h] + [cantor_unpair(x)[1] + 1 for x in a.elems])
    return h


def _linear_period(e: IndexSetExpr) -> tuple[int, int]:
    """(period L, threshold T) of the linear atoms; (1, 0) if there are none."""
    L, T = 1, 0
    for a in e.atoms():
        if isinstance(a, AP):
            L, T = _lcm(L, a.d), max(T, a.a)
        elif isinstance(a, Range):
            T = max(T, a.hi)
    return L, T


def _column_period(e: IndexSetExpr) -> int:
    P = 2 * _linear_period(e)[0]
    for a in e.atoms():
        if isinstance(a, ColsFrom):
            P = _lcm(P, a.step)
    return P


def column_infinite(e: IndexSetExpr, k: int) -> bool:
    """Linear atoms are allowed: ``n mod L`` is ``2L``-periodic in the row index."""
    L, T = _linear_period(e)
    h = max(_column_height(e, k), T)
    return any(e.grid_contains(k, m) for m in range(h, h + 2 * L))


def column_section(e: IndexSetExpr, k: int) -> list[int]:
    """Finite column section; raises if the column is infinite."""
    if column_infinite(e, k):
        raise ValueError(f"column {k} is infinite")
    return [m for m in range(_column_height(e, k) + 2) if e.grid_contains(k, m)]


def infinite_columns(e: IndexSetExpr) -> tuple[list[int], bool]:
    """(infinite columns below the stable index, whether every later column is infinite)."""
    K, P = _stable_column(e), _column_period(e)
    return ([k for k in range(K) if column_infinite(e, k)],
            all(column_infinite(e, k) for k in range(K, K + P)))


def _structure_column(e: IndexSetExpr) -> int:
    """Column index beyond which column sections only differ by a shift."""
    atoms = _grid_atoms(e)
    K = _stable_column(e)
    consts = [a.m for a in atoms if isinstance(a, Row)]
    consts += [a.offset for a in atoms if isinstance(a, Stair) and a.slope == 0]
    C = max(consts, default=0)
    growing = [a for a in atoms if isinstance(a, Stair) and a.slope > 0]
    for a in growing:
        K = max(K, math.ceil(Fraction(C + 2 - a.offset, a.slope)))
    for a in growing:
        for b in growing:
            if a.slope > b.slope:
                K = max(K, math.ceil(Fraction(b.offset - a.offset + 2, a.slope - b.slope)))
    return max(K, 0)


def grid_finiteness(e: IndexSetExpr) -> Finiteness:
    K0 = _stable_column(e)
    P = _column_period(e)
    if any(column_infinite(e, k) for k in range(K0 + P)):
        return Finiteness(False)
    K = _structure_column(e)
    if any(column_section(e, k) for k in range(K, K + P)):
        return Finiteness(False)
    return Finiteness(True, sum(len(column_section(e, k)) for k in range(K)))


# -- public decision procedures ------------------------------------------------------


def finiteness(e: IndexSetExpr) -> Finiteness:
    e = normalize(e)
    if isinstance(e, AP):
        return Finiteness(False)
    if e.is_linear():
        pf = periodic_form(e)
        if any(pf.bits):
            return Finiteness(False)
        return Finiteness(True, len(pf.prefix))
    if e.is_grid():
        return grid_finiteness(e)
    raise Undecidable(f"finiteness of mixed expression {e}")


def natural_density(e: IndexSetExpr, prefix: int = 100_000) -> Density:
    e = normalize(e)
    if isinstance(e, AP):
        return Density(Fraction(1, e.d), Fraction(1, e.d))
    if e.is_linear():
        pf = periodic_form(e)
        d = Fraction(sum(pf.bits), pf.period)
        return Density(d, d)
    try:
        if finiteness(e).finite:
            return Density(Fraction(0), Fraction(0))
    except Undecidable:
        pass
    est = float(e.mask(prefix).mean())
    return Density(Fraction(0), Fraction(1), est, prefix)


def fubini_membership(e: IndexSetExpr) -> str:
    """``"Ideal"`` if the grid image lies in ``Fin x Fin``, else ``"Positive"``."""
    e = normalize(e)
    # beyond the stable column, columns repeat with period P in k
    K, P = _stable_column(e), _column_period(e)
    if any(column_infinite(e, k) for k in range(K, K + P)):
        return "Positive"
    return "Ideal"


def is_subset(a: IndexSetExpr, b: IndexSetExpr) -> bool:
    if isinstance(a, AP) and isinstance(b, AP):
        return a.d % b.d == 0 and a.a >= b.a and (a.a - b.a) % b.d == 0
    f = finiteness(a & ~b)
    return f.finite and f.card == 0


def almost_subset(a: IndexSetExpr, b: IndexSetExpr) -> bool:
    """``a \\ b`` is finite."""
    if isinstance(a, AP) and isinstance(b, AP) and a.d % b.d == 0:
        return (a.a - b.a) % b.d == 0
    return finiteness(a & ~b).finite


def grid_catalog(limit: int | None = None) -> list[IndexSetExpr]:
    """Deterministic catalog of small grid expressions used for instance-wise checks."""
    atoms: list[IndexSetExpr] = []
    for c in range(3):
        atoms += [Col(c), ColsFrom(c), Row(c)]
    for s in range(3):
        for b in range(-1, 3):
            for par in (None, 0, 1):
                atoms.append(Stair(s, b, par))
    out: list[IndexSetExpr] = []
    for a in atoms:
        out += [a, ~a]
    for i, a in enumerate(atoms):
        for b in atoms[i + 1:]:
            out += [a | b, a & b, a & ~b, ~a & b]
    return out if limit is None else out[:limit]


# -- level sets used by sequence streams ------------------------------------------


def level_set(index: str, j: int) -> IndexSetExpr:
    """``{n : index(n) == j}`` for the supported stream indexings."""
    if index == "n":
        return Finite(frozenset({j}))
    if index == "col":
        return Col(j)
    if index == "row":
        return Row(j)
    if index == "v2":
        return AP(2**j, 2 ** (j + 1))
    raise ValueError(index)


def upper_set(index: str, J: int) -> IndexSetExpr:
    """``{n : index(n) >= J}``; for ``v2`` this includes ``n = 0``."""
    if index == "n":
        return AP(J, 1)
    if index == "col":
        return ColsFrom(J)
    if index == "row":
        return Stair(0, J)
    if index == "v2":
        return AP(0, 2**J)
    raise ValueError(index)


def index_value(index: str, n: int) -> int | None:
    if index == "n":
        return n
    if index == "col":
        return cantor_unpair(n)[0]
    if index == "row":
        return cantor_unpair(n)[1]
    if index == "v2":
        if n == 0:
            return None
        return (n & -n).bit_length() - 1
    raise ValueError(index)


def index_array(index: str, N: int) -> np.ndarray:
    n = np.arange(N, dtype=np.int64)
    if index == "n":
        return n
    k, m = cantor_unpair_array(n)
    if index == "col":
        return k
    if index == "row":
        return m
    if index == "v2":
        out = np.full(N, -1, dtype=np.int64)
        nz = n > 0
        low = n[nz] & -n[nz]
        out[nz] = np.log2(low).round().astype(np.int64)
        return out
    raise ValueError(index)


def max_constant(e: IndexSetExpr) -> int:
    """Largest integer constant in an expression (used for uniformity thresholds)."""
    c = 0
    for a in e.atoms():
        if isinstance(a, Finite):
            c = max([c] + [max(cantor_unpair(x)) for x in a.elems] + list(a.elems))
        elif isinstance(a, AP):
            c = max(c, a.a, a.d)
        elif isinstance(a, Range):
            c = max(c, a.hi)
        elif isinstance(a, Col):
            c = max(c, a.k)
        elif isinstance(a, ColsFrom):
            c = max(c, a.k0)
        elif isinstance(a, Row):
            c = max(c, a.m)
        elif isinstance(a, Stair):
            c = max(c, abs(a.offset), a.slope)
    return c
