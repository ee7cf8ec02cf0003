"""Definition-level brute force on finite prefixes and eta-grids.

Everything here works from the raw definitions: a neighborhood ladder ``U_1 ⊇ U_2 ⊇ ...``
of ``F_eta``, hit masks on a prefix of length ``N``, and a per-ideal positivity
estimator.  Nothing is imported from the engine, so the oracle is an independent check.

Prefix values are stored as ``base + sign * 2**logdev``.  Geometric streams keep their
deviation in log form, which survives far beyond float underflow (``2**-n`` for
``n`` up to the prefix length).

Neighborhoods: intervals, points and closed tail centers are dilated by ``2^-j``; the
members of a tail get windows of radius ``2^-j |dev| min(1, |dev|)``.  A fixed relative
window would not do: ``n log 2 mod log 3`` is equidistributed, so windows of a fixed
relative size around ``3^-m`` catch infinitely many powers ``2^-n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
import bisect
from functools import cached_property, lru_cache
from typing import Iterable

import numpy as np

from .exact_sets import INF, Q, RealSet, fmt_num, interval, points
from .ideals import IdealModel
from .omega_sets import cantor_unpair_array, index_array

_LN2 = math.log(2.0)
_REL_FLOOR = 1e-9  # relative float noise allowed when matching tail members


@dataclass(frozen=True)
class OracleConfig:
    prefix: int = 10_000
    grid_step: Fraction = Fraction(1, 128)
    lo: Fraction = Fraction(-5)
    hi: Fraction = Fraction(5)
    theta: float = 0.005
    collar: Fraction | None = None  # defaults to 2 * grid_step
    strict: bool = True  # False admits prefixes below 2^8 for instability demos

    def __post_init__(self):
        object.__setattr__(self, "grid_step", Q(self.grid_step))
        object.__setattr__(self, "lo", Q(self.lo))
        object.__setattr__(self, "hi", Q(self.hi))
        if self.prefix < 1 or (self.strict and self.prefix < 256):
            raise ValueError("prefix length must be at least 2^8")
        s = self.grid_step
        if s <= 0 or s > Fraction(1, 32) or s.numerator != 1 or s.denominator & (s.denominator - 1):
            raise ValueError("grid step must be a dyadic 2^-k <= 2^-5")
        if not 0 < self.theta < 1:
            raise ValueError("theta must lie in (0,1)")
        if self.lo >= self.hi:
            raise ValueError("empty grid range")

    @property
    def levels(self) -> int:
        return self.grid_step.denominator.bit_length() - 1

    @property
    def collar_width(self) -> Fraction:
        return self.collar if self.collar is not None else 2 * self.grid_step

    def grid(self) -> list[Fraction]:
        n = int((self.hi - self.lo) / self.grid_step)
        return [self.lo + i * self.grid_step for i in range(n + 1)]


# -- prefix values ---------------------------------------------------------------------

@dataclass(frozen=True)
class PrefixValues:
    base: np.ndarray  # float limit part
    sign: np.ndarray  # -1, 0, 1
    logdev: np.ndarray  # log2 |deviation|; -inf where sign == 0

    @cached_property
    def approx(self) -> np.ndarray:
        with np.errstate(over="ignore", under="ignore"):
            return self.base + self.sign * np.exp2(self.logdev)

    def __len__(self) -> int:
        return len(self.base)

    @cached_property
    def _windows(self) -> dict:
        return {}

    def window(self, a: int, b: int) -> "PrefixValues":
        """Values at indices ``[a, b)``; memoized, with ``approx`` sliced rather than rebuilt."""
        w = self._windows.get((a, b))
        if w is None:
            w = PrefixValues(self.base[a:b], self.sign[a:b], self.logdev[a:b])
            w.__dict__["approx"] = self.approx[a:b]
            self._windows[(a, b)] = w
        return w


_RECENT: dict[tuple[int, int], tuple[object, PrefixValues]] = {}


def prefix_values(x, N: int) -> PrefixValues:
    # identity lookup first: hashing a sequence spec walks all its rationals
    hit = _RECENT.get((id(x), N))
    if hit is not None and hit[0] is x:
        return hit[1]
    try:
        vals = _prefix_cached(x, N)
    except TypeError:  # unhashable sequence object
        vals = _prefix_values(x, N)
    if len(_RECENT) >= 8:
        _RECENT.clear()
    _RECENT[(id(x), N)] = (x, vals)
    return vals


@lru_cache(maxsize=32)
def _prefix_cached(x, N: int) -> PrefixValues:
    return _prefix_values(x, N)


def _prefix_values(x, N: int) -> PrefixValues:
    asg = x.assignment()
    if asg is None:
        v = np.asarray(x.prefix_float(N), dtype=float)
        return PrefixValues(v, np.zeros(N, dtype=np.int8), np.full(N, -np.inf))
    base = np.full(N, float(asg.default))
    sign = np.zeros(N, dtype=np.int8)
    logdev = np.full(N, -np.inf)
    done = np.zeros(N, dtype=bool)
    for c in asg.cells:
        m = c.index.mask(N) & ~done
        s = c.stream
        base[m] = float(s.a)
        if not s.constant:
            j = index_array(s.by, N)[m]
            live = j >= 0
            jj = np.where(live, j, 0)
            sg = np.where(jj % 2 == 1, np.sign(float(s.b)) * np.sign(float(s.q)), np.sign(float(s.b)))
            ld = math.log2(abs(s.b)) + jj * math.log2(abs(s.q))
            idx = np.flatnonzero(m)
            sign[idx] = np.where(live, sg, 0).astype(np.int8)
            logdev[idx] = np.where(live, ld, -np.inf)
        done |= m
    return PrefixValues(base, sign, logdev)


# -- neighborhoods ---------------------------------------------------------------------

def _log2_frac(v: Fraction) -> float:
    return math.log2(abs(v.numerator)) - math.log2(v.denominator)


def _tail_member_mask(t, vals: PrefixValues, eps: float) -> np.ndarray:
    c = float(t.center)
    at_center = vals.base == c
    approx = vals.approx
    with np.errstate(divide="ignore"):
        # deviation from the center, in (sign, log2) form
        d_sign = np.where(at_center, vals.sign, np.sign(approx - c))
        d_log = np.where(at_center, vals.logdev, np.log2(np.abs(approx - c)))
    out = np.zeros(len(vals), dtype=bool)
    if t.closed:
        out |= at_center | (np.abs(approx - c) < eps)
    ok = d_sign != 0
    if not ok.any():
        return out
    lc, lr = _log2_frac(t.coef), _log2_frac(t.ratio)
    mstar = (d_log[ok] - lc) / lr
    idx = np.flatnonzero(ok)
    sc, sr = np.sign(float(t.coef)), np.sign(float(t.ratio))
    for off in (0.0, 1.0):
        m = np.floor(mstar) + off
        valid = m >= 0
        m = np.where(valid, m, 0)
        ldm = lc + m * lr
        sm = np.where(m % 2 == 1, sc * sr, sc)
        width = eps * np.exp2(np.minimum(0.0, ldm)) / _LN2
        close = np.abs(d_log[ok] - ldm) < np.maximum(width, _REL_FLOOR)
        out[idx[valid & close & (sm == d_sign[ok])]] = True
    return out


def neighborhood_mask(A: RealSet, j: int, vals: PrefixValues) -> np.ndarray:
    """Hit mask of the ``j``-th neighborhood of ``A`` on the prefix."""
    eps = 2.0 ** -j
    v = vals.approx
    out = np.zeros(len(vals), dtype=bool)
    for iv in A.intervals:
        # float() maps the infinite ends to +-inf as well
        out |= (v > float(iv.lo) - eps) & (v < float(iv.hi) + eps)
    for p in A.points:
        out |= np.abs(v - float(p)) < eps
    for t in A.tails:
        out |= _tail_member_mask(t, vals, eps)
    if A.naturals_from is not None:
        r = np.round(v)
        out |= (np.abs(v - r) < eps) & (r >= A.naturals_from)
    return out


# -- positivity estimators -------------------------------------------------------------

@dataclass(frozen=True)
class Estimate:
    positive: bool
    margin: float


def _fubini_estimate(mask: np.ndarray) -> Estimate:
    N = len(mask)
    k, m = cantor_unpair_array(np.arange(N))
    K = max(4, int(math.isqrt(N) // 4))
    infinite = 0
    for col in range(K):
        sel = k == col
        rows = m[sel]
        if len(rows) == 0:
            break
        half = rows.max() // 2
        if mask[sel][rows > half].any():
            infinite += 1
    frac = infinite / K
    return Estimate(bool(frac >= 0.25), frac - 0.25)


def estimate_positive(I: IdealModel, mask: np.ndarray, theta: float) -> Estimate:
    N = len(mask)
    if I.kind == "Fin":
        late = int(mask[N // 2:].sum())
        return Estimate(late > 0, float(late))
    if I.kind == "Z":
        dens = [np.count_nonzero(mask[:c]) / c for c in (N // 4, N // 2, N)]
        lo = min(dens)
        return Estimate(bool(lo >= theta), float(lo - theta))
    return _fubini_estimate(mask)


def _late_estimate(I: IdealModel, mask: np.ndarray, theta: float) -> Estimate:
    """Positivity of a mask that is empty on its first half."""
    N = len(mask)
    if I.kind == "Z":
        dens = [mask[N // 2: 3 * N // 4].mean(), mask[3 * N // 4:].mean()]
        lo = float(min(dens))
        return Estimate(bool(lo >= theta), lo - theta)
    return estimate_positive(I, mask, theta)


# -- membership ------------------------------------------------------------------------

@dataclass(frozen=True)
class Verdict:
    member: bool
    margin: float
    detail: str = ""


_FAMILY_SETS: dict[tuple[int, Fraction], tuple[object, RealSet]] = {}


def _family_set(F, eta) -> RealSet:
    # the three membership tests revisit the same grid, so members are memoized by identity
    eta = Q(eta)
    hit = _FAMILY_SETS.get((id(F), eta))
    if hit is not None and hit[0] is F:
        return hit[1]
    if len(_FAMILY_SETS) >= 8192:
        _FAMILY_SETS.clear()
    A = F.at(eta)
    _FAMILY_SETS[(id(F), eta)] = (F, A)
    return A


def _level_mask(A: RealSet, j: int, vals: PrefixValues, memo: dict | None) -> np.ndarray:
    if memo is None:
        return neighborhood_mask(A, j, vals)
    if j not in memo:
        memo[j] = neighborhood_mask(A, j, vals)
    return memo[j]


def approx_gamma_member(x, I: IdealModel, F, eta, cfg: OracleConfig,
                        memo: dict | None = None) -> Verdict:
    """All tested neighborhoods ``U_j`` have an estimated-positive hit set."""
    vals = prefix_values(x, cfg.prefix)
    A = _family_set(F, eta)
    margins = []
    for j in range(1, cfg.levels + 1):
        e = estimate_positive(I, _level_mask(A, j, vals, memo), cfg.theta)
        margins.append(e.margin)
        if not e.positive:
            return Verdict(False, e.margin, f"U_{j} hit set estimated in the ideal")
    return Verdict(True, min(margins), f"positive for j <= {cfg.levels}")


def approx_lim_member(x, I: IdealModel, F, eta, cfg: OracleConfig,
                      memo: dict | None = None) -> Verdict:
    """All tested neighborhoods have a complement-hit set estimated in the ideal."""
    vals = prefix_values(x, cfg.prefix)
    A = _family_set(F, eta)
    worst = -math.inf
    for j in range(1, cfg.levels + 1):
        e = estimate_positive(I, ~_level_mask(A, j, vals, memo), cfg.theta)
        worst = max(worst, e.margin)
        if e.positive:
            return Verdict(False, -e.margin, f"complement of U_{j} hit positively")
    return Verdict(True, -worst, f"complement hits small for j <= {cfg.levels}")


def extraction_mask(A: RealSet, vals: PrefixValues, levels: int) -> np.ndarray:
    """Greedy extraction: index ``n`` is kept when ``x_n`` lies in ``U_{j(n)}``, with
    ``j(n)`` climbing to the finest level by a quarter of the prefix."""
    N = len(vals)
    out = np.zeros(N, dtype=bool)
    for j, (a, b) in enumerate(_schedule(N, levels), start=1):
        if a < b:
            out[a:b] = neighborhood_mask(A, j, vals.window(a, b))
    return out


@lru_cache(maxsize=64)
def _schedule(N: int, levels: int) -> tuple[tuple[int, int], ...]:
    """Index ranges ``[a, b)`` extracted at each level."""
    sched = np.minimum(levels, 1 + (np.arange(N) * levels) // max(1, N // 4))
    return tuple((int(np.searchsorted(sched, j, "left")), int(np.searchsorted(sched, j, "right")))
                 for j in range(1, levels + 1))


def approx_lambda_member(x, I: IdealModel, F, eta, cfg: OracleConfig) -> Verdict:
    vals = prefix_values(x, cfg.prefix)
    S = extraction_mask(_family_set(F, eta), vals, cfg.levels)
    # only the part extracted at the finest level says anything about convergence
    late = S.copy()
    late[: len(S) // 2] = False
    e = _late_estimate(I, late, cfg.theta)
    dens = float(S[len(S) // 2:].mean())
    return Verdict(e.positive, e.margin, f"extracted density {dens:.4f} on the second half")


MEMBER_TESTS = {"gamma": approx_gamma_member, "lim": approx_lim_member,
                "lambda": approx_lambda_member}


# -- grids and comparison -------------------------------------------------------------

@dataclass(frozen=True)
class GridPoint:
    eta: Fraction
    member: bool
    margin: float = 0.0


def grid_set(x, I: IdealModel, F, which: str, cfg: OracleConfig,
             grid: Iterable | None = None) -> list[GridPoint]:
    test = MEMBER_TESTS[which]
    pts = cfg.grid() if grid is None else [Q(g) for g in grid]
    out = []
    for eta in pts:
        v = test(x, I, F, eta, cfg)
        out.append(GridPoint(eta, v.member, v.margin))
    return out


def grid_sets(x, I: IdealModel, F, which: Iterable[str], cfg: OracleConfig,
              grid: Iterable | None = None) -> dict[str, list[GridPoint]]:
    """Several membership grids in one sweep; Gamma and Lim share their hit masks."""
    which = list(which)
    pts = cfg.grid() if grid is None else [Q(g) for g in grid]
    out: dict[str, list[GridPoint]] = {w: [] for w in which}
    for eta in pts:
        memo: dict = {}
        for w in which:
            if w == "lambda":
                v = approx_lambda_member(x, I, F, eta, cfg)
            else:
                v = MEMBER_TESTS[w](x, I, F, eta, cfg, memo)
            out[w].append(GridPoint(eta, v.member, v.margin))
    return out


def grid_to_set(grid: list[GridPoint], step: Fraction) -> RealSet:
    """Runs of consecutive members become closed intervals, lone members points."""
    ivs, pts = [], []
    run: list[Fraction] = []
    for g in grid + [None]:
        if g is not None and g.member and (not run or g.eta - run[-1] == step):
            run.append(g.eta)
            continue
        if len(run) == 1:
            pts.append(run[0])
        elif run:
            ivs.append(interval(run[0], run[-1]))
        run = [g.eta] if g is not None and g.member else []
    out = points(*pts)
    for s in ivs:
        out = out | s
    return out


def empirical_cluster_set(x, I: IdealModel, cfg: OracleConfig) -> RealSet:
    """Classical cluster points estimated on the grid (degenerate family)."""
    from .rough_families import Degenerate
    return grid_to_set(grid_set(x, I, Degenerate(), "gamma", cfg), cfg.grid_step)


def margins_tsv(grid: list[GridPoint]) -> str:
    lines = ["eta\tmember\tmargin"]
    lines += [f"{float(g.eta):.10g}\t{int(g.member)}\t{g.margin:.6g}" for g in grid]
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Discrepancy:
    eta: Fraction
    engine: bool
    oracle: bool
    margin: float
    cause: str  # "boundary" | "estimator" | "genuine"


@dataclass
class Comparison:
    passed: bool
    d_H: float
    discrepancies: list[Discrepancy] = field(default_factory=list)

    def lines(self) -> list[str]:
        head = f"compare: {'pass' if self.passed else 'fail'}  d_H = {self.d_H:.6g}"
        out = [head]
        for d in self.discrepancies:
            out.append(f"  eta={fmt_num(d.eta)} engine={d.engine} oracle={d.oracle} "
                       f"margin={d.margin:.4g} cause={d.cause}")
        return out


def boundary_of(S: RealSet) -> RealSet:
    ends = []
    for iv in S.intervals:
        ends += [e for e in (iv.lo, iv.hi) if e not in (-INF, INF)]
    tails = [type(t)(t.center, t.coef, t.ratio, True) for t in S.tails]
    return RealSet.of(points=list(S.points) + ends, tails=tails, naturals_from=S.naturals_from)


def _cloud_distance(cloud: list[Fraction], p: Fraction) -> Fraction:
    i = bisect.bisect_left(cloud, p)
    return min(abs(cloud[k] - p) for k in (i - 1, i) if 0 <= k < len(cloud))


def cloud_hausdorff(cloud: list[Fraction], W: RealSet, tail_terms: int = 64) -> float:
    """Hausdorff distance between a sorted finite cloud and a bounded set.

    Distance to the cloud is piecewise linear with peaks at midpoints of consecutive
    cloud points, so the sup over ``W`` is attained at a midpoint inside ``W``, an
    endpoint, an isolated point, or (up to the last tail deviation) a tail member.
    """
    one = max(W.distance(c) for c in cloud)
    cands = list(W.points)
    for iv in W.intervals:
        cands += [Q(iv.lo), Q(iv.hi)]
    for t in W.tails:
        cands += [t.member(j) for j in range(tail_terms)] + [t.center]
    cands += [(a + b) / 2 for a, b in zip(cloud, cloud[1:]) if W.contains((a + b) / 2)]
    two = max(_cloud_distance(cloud, p) for p in cands) if cands else Fraction(0)
    return float(max(one, two))


def compare(engine: RealSet, grid: list[GridPoint], cfg: OracleConfig,
            estimator_band: float | None = None) -> Comparison:
    """Pass iff every grid disagreement lies within the collar of the engine set's boundary.

    A disagreement away from the boundary is labelled ``estimator`` when the oracle's
    margin is within ``estimator_band`` of its threshold, else ``genuine``; both fail.
    """
    if estimator_band is None:
        # below the supported prefix every off-boundary disagreement is an estimator artifact
        estimator_band = cfg.theta if cfg.prefix >= 256 else math.inf
    band = estimator_band
    bd = boundary_of(engine)
    collar = cfg.collar_width
    disc = []
    for g in grid:
        e = engine.contains(g.eta)
        if e == g.member:
            continue
        near = not bd.is_empty() and bd.distance(g.eta) <= collar
        cause = "boundary" if near else ("estimator" if abs(g.margin) < band else "genuine")
        disc.append(Discrepancy(g.eta, e, g.member, g.margin, cause))
    cloud = [g.eta for g in grid if g.member]
    window = engine & interval(min(g.eta for g in grid), max(g.eta for g in grid)) if grid else engine
    if not cloud and window.is_empty():
        dh = 0.0
    elif not cloud or window.is_empty():
        dh = math.inf
    else:
        dh = cloud_hausdorff(sorted(cloud), window)
    return Comparison(all(d.cause == "boundary" for d in disc), dh, disc)
