"""Rough families ``eta -> F_eta`` with their regularity metadata."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exact_sets import INF, Interval, Q, RealSet, fmt_num, interval, points
from .piecewise import RadiusFunction

CERTIFIED, FALSIFIED, UNKNOWN = "Certified", "Falsified", "Unknown"


@dataclass(frozen=True)
class Space:
    """Ambient space descriptor.  ``model`` is the one-point compactification of
    omega realised inside the reals as ``{0} u {2^-k}``."""

    name: str = "real"

    @property
    def uc(self) -> bool:
        # every continuous real function on it is uniformly continuous
        return self.name == "model"

    def contains(self, v) -> bool:
        if self.name == "real":
            return True
        v = Q(v)
        return v == 0 or (v > 0 and v.numerator == 1 and v.denominator & (v.denominator - 1) == 0)


REAL, MODEL = Space("real"), Space("model")


@dataclass(frozen=True)
class TauHat:
    status: str
    note: str = ""
    eta: Fraction | None = None
    U: RealSet | None = None
    probes: tuple[Fraction, ...] = ()


class RoughFamily:
    space: Space = REAL

    def at(self, eta) -> RealSet:
        raise NotImplementedError

    @property
    def all_closed(self) -> bool:
        raise NotImplementedError

    def to_text(self) -> str:
        raise NotImplementedError

    def tau_hat(self) -> TauHat:
        raise NotImplementedError

    def __str__(self) -> str:
        return self.to_text()


def f_of(F: RoughFamily, eta) -> RealSet:
    return F.at(eta)


@dataclass(frozen=True)
class Degenerate(RoughFamily):
    def at(self, eta) -> RealSet:
        return points(eta)

    @property
    def all_closed(self) -> bool:
        return True

    def tau_hat(self) -> TauHat:
        return TauHat(CERTIFIED, "eta -> {eta} is continuous")

    def to_text(self) -> str:
        return "degenerate"


@dataclass(frozen=True)
class Ball(RoughFamily):
    radius: RadiusFunction
    closed: bool = True

    def at(self, eta) -> RealSet:
        eta = Q(eta)
        r = self.radius(eta)
        if r < 0:
            raise ValueError(f"negative radius at {fmt_num(eta)}")
        if r == 0:
            # the open ball of radius 0 would miss eta itself
            return points(eta)
        return interval(eta - r, eta + r, self.closed, self.closed)

    @property
    def all_closed(self) -> bool:
        if self.closed:
            return True
        # open balls are closed only where the radius vanishes
        return False

    def tau_hat(self) -> TauHat:
        if not self.closed:
            return TauHat(UNKNOWN, "open balls are not members of the closed hyperspace")
        ok, at, gap = self.radius.usc_check()
        if ok:
            return TauHat(CERTIFIED, "closed balls of an upper semicontinuous radius on the line "
                                     "(closed balls are compact, so the UC escape applies)")
        # radius jumps up next to `at`: nearby balls stick out of a neighborhood of F_at
        U = self.at(at).open_dilate(gap / 4)
        probes = []
        for j in range(4, 21):
            d = Fraction(1, 2**j)
            for e in (at - d, at + d):
                if not self.at(e).subset_of(U):
                    probes.append(e)
                    break
        if len(probes) == 17:
            return TauHat(FALSIFIED, f"radius not USC at {fmt_num(at)}", at, U, tuple(probes))
        return TauHat(UNKNOWN, "radius not USC, no falsifying probe sequence")

    def to_text(self) -> str:
        return f"ball(r={self.radius.to_text()}, {'closed' if self.closed else 'open'})"


@dataclass(frozen=True)
class Region:
    where: Interval
    extra: RealSet


@dataclass(frozen=True)
class Table(RoughFamily):
    """Point overrides, region overrides (``F_eta = default(eta) u K``), then a default."""

    overrides: tuple[tuple[Fraction, RealSet], ...] = ()
    regions: tuple[Region, ...] = ()
    default: RoughFamily = field(default_factory=Degenerate)

    def __post_init__(self):
        for eta, S in self.overrides:
            if not S.contains(eta):
                raise ValueError(f"F_eta must contain eta; violated at {fmt_num(eta)}")

    def override(self, eta) -> RealSet | None:
        for e, S in self.overrides:
            if e == eta:
                return S
        return None

    def at(self, eta) -> RealSet:
        eta = Q(eta)
        S = self.override(eta)
        if S is not None:
            return S
        out = self.default.at(eta)
        for reg in self.regions:
            if reg.where.contains(eta):
                out = out | reg.extra
        return out

    @property
    def all_closed(self) -> bool:
        return (self.default.all_closed
                and all(S.is_closed() for _, S in self.overrides)
                and all(r.extra.is_closed() for r in self.regions))

    def special_points(self) -> list[Fraction]:
        pts = [e for e, _ in self.overrides]
        for r in self.regions:
            pts += [Q(x) for x in (r.where.lo, r.where.hi) if x not in (-INF, INF)]
        return sorted(set(pts), key=lambda e: (abs(e), e < 0))

    def tau_hat(self) -> TauHat:
        """Probe search: a point whose neighbors' sets leave a neighborhood of F_eta."""
        if not self.all_closed:
            return TauHat(UNKNOWN, "family has non-closed members")
        for eta in self.special_points():
            base = self.at(eta)
            for rho in (Fraction(1, 2), Fraction(1, 8)):
                try:
                    U = base.open_dilate(rho)
                except ValueError:
                    continue
                for side in (-1, 1):
                    probes = []
                    for j in range(1, 21):
                        e = eta + side * Fraction(1, 2**j)
                        if not self.at(e).subset_of(U):
                            probes.append(e)
                    # every probe from 2^-4 on escapes: falsified along that side
                    if len(probes) >= 17 and all(
                            not self.at(eta + side * Fraction(1, 2**j)).subset_of(U) for j in range(4, 21)):
                        return TauHat(FALSIFIED, f"F leaves U near {fmt_num(eta)}", eta, U, tuple(probes))
        return TauHat(UNKNOWN, "no falsifying probe found; no certificate for tables")

    def to_text(self) -> str:
        parts = [f"{fmt_num(e)} -> {S.to_text()}" for e, S in self.overrides]
        parts += [f"region {r.where.to_text()} add {r.extra.to_text()}" for r in self.regions]
        parts.append(f"default {self.default.to_text()}")
        return "table{ " + ", ".join(parts) + " }"


@dataclass(frozen=True)
class ModelFamily(RoughFamily):
    """On the compactification: ``F_k = {k, omega}``, ``F_omega = {omega}``."""

    space: Space = MODEL

    def at(self, eta) -> RealSet:
        eta = Q(eta)
        if not MODEL.contains(eta):
            raise ValueError(f"{fmt_num(eta)} is not a point of the model space")
        return points(0) if eta == 0 else points(eta, 0)

    @property
    def all_closed(self) -> bool:
        return True

    def tau_hat(self) -> TauHat:
        return TauHat(CERTIFIED, "neighborhoods of F_k contain omega, hence F_j for large j")

    def to_text(self) -> str:
        return "model"


def tau_hat_continuity(F: RoughFamily, space: Space | None = None) -> TauHat:
    return F.tau_hat()


def usc_check(r: RadiusFunction):
    from .piecewise import usc_check as _u
    return _u(r)


def example21_family() -> Table:
    """``F_1 = {2^-n}``, ``F_{1/3} = {3^-(n+1)}``, degenerate elsewhere."""
    from .exact_sets import tail
    return Table(((Fraction(1), tail(1, Fraction(1, 2))),
                  (Fraction(1, 3), tail(Fraction(1, 3), Fraction(1, 3)))))


def f_prime_family() -> Table:
    """``F'_eta = {1, eta}`` for ``|eta| < 2``, ``{eta}`` otherwise."""
    return Table((), (Region(Interval(Fraction(-2), Fraction(2), False, False), points(1)),))
