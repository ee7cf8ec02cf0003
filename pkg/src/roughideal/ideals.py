"""The ideal catalog: Fin, Z (asymptotic density zero) and Fin x Fin copied to omega.

Membership answers ``In``, ``Positive`` or ``Unknown``.  Global P / P+ verdicts are
catalog facts; the failure witnesses are families of index sets whose monotonicity
and ideal status are checked symbolically, together with an instance-wise check that
no representable set is a pseudo-union / pseudo-intersection with the wrong status.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .omega_sets import (
    AP, ColsFrom, Finite, IndexSetExpr, Undecidable, almost_subset,
    column_infinite, finiteness, fubini_membership, grid_catalog, is_subset,
    natural_density, normalize, periodic_form,
)

IN, POSITIVE, UNKNOWN = "In", "Positive", "Unknown"
KINDS = ("Fin", "Z", "FinxFin")


@dataclass(frozen=True)
class WitnessFamily:
    name: str
    direction: str  # "increasing" | "decreasing"
    generator: Callable[[int], IndexSetExpr]
    member_status: str  # status every member must have
    certificate: str

    def __call__(self, k: int) -> IndexSetExpr:
        return self.generator(k)


@dataclass
class PropertyReport:
    ideal: str
    prop: str  # "P" | "P+"
    holds: bool
    basis: str  # "cited" | "witness-checked" | "construction-checked"
    witness: WitnessFamily | None = None
    checks: list[str] = field(default_factory=list)
    ok: bool = True

    def lines(self) -> list[str]:
        head = f"{self.ideal}: {self.prop} = {str(self.holds).lower()} ({self.basis})"
        out = [head]
        if self.witness is not None:
            out.append(f"  witness {self.witness.name} [{self.witness.direction}]: {self.witness.certificate}")
        out += [f"  {c}" for c in self.checks]
        return out


@dataclass(frozen=True)
class IdealModel:
    kind: str
    pairing: str = "cantor"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown ideal {self.kind!r}; expected one of {KINDS}")
        if self.pairing != "cantor":
            raise ValueError("only the cantor pairing is supported")

    @property
    def is_P(self) -> bool:
        return self.kind in ("Fin", "Z")

    @property
    def is_P_plus(self) -> bool:
        return self.kind == "Fin"

    def membership(self, S: IndexSetExpr) -> str:
        return membership(self, S)

    def positive(self, S: IndexSetExpr) -> bool | None:
        m = membership(self, S)
        return None if m == UNKNOWN else m == POSITIVE

    def to_text(self) -> str:
        return "FinxFin(pairing=cantor)" if self.kind == "FinxFin" else self.kind

    def __str__(self) -> str:
        return self.to_text()


FIN, Z, FINXFIN = IdealModel("Fin"), IdealModel("Z"), IdealModel("FinxFin")


def ideal(kind: str) -> IdealModel:
    return IdealModel(kind)


def membership(I: IdealModel, S: IndexSetExpr) -> str:
    S = normalize(S)
    try:
        fin = finiteness(S)
    except Undecidable:
        fin = None
    if fin is not None and fin.finite:
        return IN
    if I.kind == "Fin":
        return UNKNOWN if fin is None else POSITIVE
    if I.kind == "Z":
        d = natural_density(S)
        if d.exact:
            return IN if d.value == 0 else POSITIVE
        if d.lower > 0:
            return POSITIVE
        return UNKNOWN
    try:
        return IN if fubini_membership(S) == "Ideal" else POSITIVE
    except Undecidable:
        return UNKNOWN


# -- witness families ----------------------------------------------------------------

def _first_columns(k: int) -> IndexSetExpr:
    return ~ColsFrom(k)


FINXFIN_P_WITNESS = WitnessFamily(
    "first k columns", "increasing", _first_columns, IN,
    "a set S with I_k \\ S finite for every k has every column cofinite, "
    "so infinitely many infinite columns: S is Positive",
)
Z_P_PLUS_WITNESS = WitnessFamily(
    "A_k = 2^k * omega", "decreasing", lambda k: AP(0, 2**k), POSITIVE,
    "A \\ A_k finite for all k gives upper density of A <= 2^-k for all k, "
    "so d(A) = 0 and A is in Z",
)
FINXFIN_P_PLUS_WITNESS = WitnessFamily(
    "A_k = cols(k..)", "decreasing", ColsFrom, POSITIVE,
    "A \\ A_k finite for all k makes every column of A finite: A is in Fin x Fin",
)


def verify_witness(I: IdealModel, w: WitnessFamily, kmax: int = 64) -> list[str]:
    """Check monotonicity and member status for ``k <= kmax``; returns failure lines."""
    bad = []
    for k in range(kmax + 1):
        if membership(I, w(k)) != w.member_status:
            bad.append(f"member {k} is not {w.member_status}")
        if k < kmax:
            small, big = (w(k), w(k + 1)) if w.direction == "increasing" else (w(k + 1), w(k))
            if not is_subset(small, big):
                bad.append(f"monotonicity fails at k={k}")
    return bad


def _grid_pseudo_union_of_columns(S: IndexSetExpr) -> bool:
    # first-k-columns are almost contained in S for all k iff every column of S is cofinite
    K = 0
    for a in S.atoms():
        K = max(K, getattr(a, "k", 0) + 1, getattr(a, "k0", 0) + 1)
    return all(not column_infinite(~S, k) for k in range(K + 2))


def _grid_pseudo_intersection_of_tails(S: IndexSetExpr) -> bool:
    K = 0
    for a in S.atoms():
        K = max(K, getattr(a, "k", 0) + 1, getattr(a, "k0", 0) + 1)
    return all(not column_infinite(S, k) for k in range(K + 2))


def _linear_catalog() -> list[IndexSetExpr]:
    out: list[IndexSetExpr] = [Finite(frozenset({0, 3, 8}))]
    for d in (1, 2, 3, 4, 6, 8, 12, 16):
        for a in range(0, 4):
            out.append(AP(a, d))
            out.append(AP(a, d) | Finite(frozenset({1, 2})))
            out.append(~AP(a, d))
    return out


def p_property_report(I: IdealModel, kmax: int = 64) -> PropertyReport:
    if I.kind in ("Fin", "Z"):
        return PropertyReport(I.kind, "P", True, "cited",
                              checks=["catalog fact: every increasing sequence in the ideal has a pseudo-union in it"])
    w = FINXFIN_P_WITNESS
    bad = verify_witness(I, w, kmax)
    checked = 0
    for S in grid_catalog():
        if _grid_pseudo_union_of_columns(S):
            checked += 1
            if membership(I, S) != POSITIVE:
                bad.append(f"representable pseudo-union {S} is not Positive")
    checks = [f"monotone and In for k <= {kmax}",
              f"{checked} representable pseudo-unions checked Positive"]
    return PropertyReport(I.kind, "P", False, "witness-checked", w, checks + bad, not bad)


def diagonal_selection(family: Callable[[int], IndexSetExpr], kmax: int) -> list[int]:
    """Pick ``n_0 < n_1 < ...`` with ``n_k`` in ``A_k``; the picks form a pseudo-intersection."""
    picks: list[int] = []
    for k in range(kmax + 1):
        A = family(k)
        n = picks[-1] + 1 if picks else 0
        if isinstance(A, AP):
            n = max(n, A.a)
            n += (A.a - n) % A.d
        else:
            pf = periodic_form(A)
            while not pf.contains(n):
                n += 1
        picks.append(n)
    return picks


def p_plus_property_report(I: IdealModel, kmax: int = 64) -> PropertyReport:
    if I.kind == "Fin":
        chain = Z_P_PLUS_WITNESS.generator
        picks = diagonal_selection(chain, kmax)
        bad = []
        for k, n in enumerate(picks):
            for j in range(k + 1):
                if not chain(j).contains(n):
                    bad.append(f"pick {n} not in A_{j}")
        checks = [f"diagonal selection {picks[:6]}... lies in A_j for all j <= k (infinite, hence Positive)"]
        return PropertyReport(I.kind, "P+", True, "construction-checked", checks=checks + bad, ok=not bad)
    if I.kind == "Z":
        w = Z_P_PLUS_WITNESS
        bad = verify_witness(I, w, kmax)
        dens = [natural_density(w(k)).value for k in range(kmax + 1)]
        if any(dens[k] != Fraction(1, 2**k) for k in range(kmax + 1)):
            bad.append("density formula 2^-k violated")
        checked = 0
        for S in _linear_catalog():
            if all(almost_subset(S, w(k)) for k in range(0, 9)):
                checked += 1
                if membership(I, S) != IN:
                    bad.append(f"representable pseudo-intersection {S} is not In")
        checks = [f"d(A_k) = 2^-k, decreasing, for k <= {kmax}; inf = 0",
                  f"{checked} representable pseudo-intersections checked In"]
        return PropertyReport(I.kind, "P+", False, "witness-checked", w, checks + bad, not bad)
    w = FINXFIN_P_PLUS_WITNESS
    bad = verify_witness(I, w, kmax)
    checked = 0
    for S in grid_catalog():
        if _grid_pseudo_intersection_of_tails(S):
            checked += 1
            if membership(I, S) != IN:
                bad.append(f"representable pseudo-intersection {S} is not In")
    checks = [f"decreasing and Positive for k <= {kmax}",
              f"{checked} representable pseudo-intersections checked In"]
    return PropertyReport(I.kind, "P+", False, "witness-checked", w, checks + bad, not bad)

