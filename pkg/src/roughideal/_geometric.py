"""Exact arithmetic on geometric progressions of rationals.

The central question answered here is: for which exponents ``n >= 0`` is
``b * q**n`` equal to ``c * r**m`` for some ``m >= 0``?  The answer is always
a finite set or a finite union of arithmetic progressions, and it is found by
comparing p-adic valuations, so no search bound has to be guessed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd


def _factor_int(n: int) -> dict[int, int]:
    n = abs(n)
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def valuations(x: Fraction) -> dict[int, int]:
    """p-adic valuations of a nonzero rational, zero entries omitted."""
    if x == 0:
        raise ValueError("valuation of zero")
    v = _factor_int(x.numerator)
    for p, e in _factor_int(x.denominator).items():
        v[p] = v.get(p, 0) - e
    return {p: e for p, e in v.items() if e}


@dataclass(frozen=True)
class IndexPattern:
    """A subset of the naturals: ``finite`` plus ``{start + k*step : k >= 0}``."""

    finite: frozenset[int] = frozenset()
    progressions: tuple[tuple[int, int], ...] = field(default=())

    def __contains__(self, n: int) -> bool:
        if n in self.finite:
            return True
        return any(n >= s and (n - s) % d == 0 for s, d in self.progressions)

    def is_finite(self) -> bool:
        return not self.progressions

    def union(self, other: "IndexPattern") -> "IndexPattern":
        return IndexPattern(
            self.finite | other.finite,
            tuple(sorted(set(self.progressions) | set(other.progressions))),
        )

    def period_data(self) -> tuple[int, int]:
        """(threshold, period) after which membership is periodic."""
        period = 1
        for _, d in self.progressions:
            period = period * d // gcd(period, d)
        threshold = max([s for s, _ in self.progressions] + [n + 1 for n in self.finite] + [0])
        return threshold, period

    def covers_all(self) -> bool:
        if not self.progressions:
            return False
        t, p = self.period_data()
        return all(n in self for n in range(t + p))

    def is_empty(self) -> bool:
        return not self.finite and not self.progressions


EMPTY_PATTERN = IndexPattern()


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def geometric_matches(b: Fraction, q: Fraction, c: Fraction, r: Fraction) -> IndexPattern:
    """All ``n >= 0`` such that ``b*q**n == c*r**m`` for some ``m >= 0``.

    Requires nonzero ``b, c`` and ``0 < |q|, |r| < 1``.
    """
    b, q, c, r = map(Fraction, (b, q, c, r))
    if b == 0 or c == 0:
        raise ValueError("zero coefficient")
    if not (0 < abs(q) < 1 and 0 < abs(r) < 1):
        raise ValueError("ratios must satisfy 0 < |ratio| < 1")
    vb, vq, vc, vr = valuations(b), valuations(q), valuations(c), valuations(r)
    primes = sorted(set(vb) | set(vq) | set(vc) | set(vr))

    def g(v: dict[int, int], p: int) -> int:
        return v.get(p, 0)

    # n*vq - m*vr = vc - vb, coordinatewise
    d = {p: g(vc, p) - g(vb, p) for p in primes}
    pivot = None
    for i, p1 in enumerate(primes):
        for p2 in primes[i + 1:]:
            det = -g(vq, p1) * g(vr, p2) + g(vr, p1) * g(vq, p2)
            if det:
                pivot = (p1, p2, det)
                break
        if pivot:
            break

    if pivot is not None:
        p1, p2, det = pivot
        n = Fraction(-d[p1] * g(vr, p2) + g(vr, p1) * d[p2], det)
        m = Fraction(g(vq, p1) * d[p2] - g(vq, p2) * d[p1], det)
        if n.denominator == 1 and m.denominator == 1 and n >= 0 and m >= 0:
            if b * q ** int(n) == c * r ** int(m):
                return IndexPattern(frozenset({int(n)}))
        return EMPTY_PATTERN

    # valuation vectors are proportional: vq = lam * vr
    p0 = next(p for p in primes if g(vr, p))
    lam = Fraction(g(vq, p0), g(vr, p0))
    mu = Fraction(-d[p0], g(vr, p0))
    for p in primes:
        if g(vq, p) != lam * g(vr, p) or -d[p] != mu * g(vr, p):
            return EMPTY_PATTERN
    assert lam > 0
    # m(n) = mu + n*lam grows with n; solutions repeat with period 2*den(lam)
    period = 2 * lam.denominator
    start = 0
    if mu < 0:
        start = int(-mu / lam)
        while mu + start * lam < 0:
            start += 1
    hits = []
    for n in range(start, start + period):
        m = mu + n * lam
        if m.denominator == 1 and m >= 0 and b * q**n == c * r ** int(m):
            hits.append((n, period))
    return IndexPattern(frozenset(), tuple(hits))
