"""Characterization-based computation of Lim, Lim*, Gamma and Lambda with roughness.

Every report carries a hypothesis ledger naming the rule that produced each part of
the answer and how its hypotheses were checked, plus certificates (witness index sets,
separating open sets).  Answers are graded ``Exact``, ``Inner+Outer`` (a sandwich) or
``Empirical`` (the prefix oracle had to decide something).

Point rules for ``eta in Gamma_x(I, F)``, tried in order:

* R1  the hit set of ``F_eta`` is positive: member.
* R2  ``F_eta`` compact, or closed with ``x`` bounded: member iff ``F_eta`` meets
  ``Gamma_x(I)`` (finitely many neighborhoods with small hit sets cover a compact set
  missing the cluster points).
* R3  ``F_eta`` open: member iff its own hit set is positive.
* R4  a separating open set with a hit set in the ideal: non-member.
* R5  oracle fallback.

Set-level answers for ball families solve ``dist(eta, G) <= r(eta)`` piecewise.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .distance import Refusal, disjoint_cells, lambda_via_distance
from .exact_sets import (
    INF, Interval, Q, RealSet, Tail, fmt_num, interval, points, tail,
)
from .ideals import IN, POSITIVE, UNKNOWN, IdealModel, membership
from .omega_sets import (
    IndexSetExpr, Inter, Not, Stair, Undecidable, Union, level_set, normalize,
)
from .oracle import (
    OracleConfig, approx_gamma_member, approx_lambda_member, approx_lim_member,
    grid_set, grid_to_set,
)
from .piecewise import RadiusFunction, far_distance, near_distance, solve_le
from .rough_families import Ball, Degenerate, ModelFamily, RoughFamily, Table
from .sequences import (
    EXACT as SEQ_EXACT, DenseCover, Natural, SequenceSpec, Unsupported, VanDerCorput,
    _cell_cluster, cluster_set, hit_set, hit_status, limit_point_set,
)

EXACT, BOUNDS, EMPIRICAL = "Exact", "Inner+Outer", "Empirical"
MODEL_SPACE = tail(1, Fraction(1, 2), 0, closed=True)


@dataclass(frozen=True)
class LedgerEntry:
    theorem: str
    hypothesis: str
    status: str  # checked | satisfied | cited | violated | assumed

    def to_json(self) -> dict:
        return {"theorem": self.theorem, "hypothesis": self.hypothesis, "status": self.status}


@dataclass(frozen=True)
class Certificate:
    kind: str
    eta: Fraction | None
    text: str

    def to_json(self) -> dict:
        return {"kind": self.kind, "eta": None if self.eta is None else fmt_num(self.eta),
                "text": self.text}


@dataclass
class SetReport:
    which: str
    inner: RealSet
    outer: RealSet
    grade: str
    ledger: list[LedgerEntry] = field(default_factory=list)
    certificates: list[Certificate] = field(default_factory=list)

    def __post_init__(self):
        if self.grade == EXACT and not same_set(self.inner, self.outer):
            raise AssertionError("exact report with distinct bounds")

    @property
    def set(self) -> RealSet:
        return self.inner

    @property
    def exact(self) -> bool:
        return self.grade == EXACT

    def set_text(self) -> str:
        if self.grade == BOUNDS:
            return f"inner {self.inner.to_text()} / outer {self.outer.to_text()}"
        return self.inner.to_text()

    def lines(self) -> list[str]:
        out = [f"{self.which}: {self.set_text()} [{self.grade}]"]
        out += [f"  ledger: {e.theorem} | {e.hypothesis} | {e.status}" for e in self.ledger]
        out += [f"  cert: {c.kind}" + (f" at {fmt_num(c.eta)}" if c.eta is not None else "")
                + f": {c.text}" for c in self.certificates]
        return out

    def to_json(self) -> dict:
        d = {"which": self.which, "grade": self.grade}
        if self.grade == BOUNDS:
            d["inner"] = self.inner.to_text()
            d["outer"] = self.outer.to_text()
        else:
            d["set"] = self.inner.to_text()
        d["atoms"] = self.inner.to_json()
        d["ledger"] = [e.to_json() for e in self.ledger]
        d["certificates"] = [c.to_json() for c in self.certificates]
        return d

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


@dataclass(frozen=True)
class PointVerdict:
    member: bool | None
    rule: str
    empirical: bool = False


@dataclass(frozen=True)
class SeparatingWitness:
    """``U = R minus C`` (or an explicit open set) with ``{n : x_n in U}`` in the ideal."""

    removed: RealSet | None
    U: RealSet | None
    hits: IndexSetExpr | None
    status: str

    def to_text(self) -> str:
        if self.U is not None:
            s = f"U = {self.U.to_text()}"
        else:
            s = f"U = R \\ ({self.removed.to_text()})"
        if self.hits is not None:
            s += f"; hits = {self.hits.to_text()}"
        return s + f" [{self.status}]"


# -- context ---------------------------------------------------------------------------

class _Ctx:
    def __init__(self, x: SequenceSpec, I: IdealModel, F: RoughFamily, cfg: OracleConfig | None):
        self.x, self.I, self.F = x, I, F
        self.cfg = cfg or OracleConfig()
        self.bounded = getattr(x, "bounded", True)
        self.model = getattr(x, "space", "real") == "model" or F.space.name == "model"
        g = cluster_set(x, I)
        self.gam = g.set
        self.gam_exact = g.exactness == SEQ_EXACT
        self._lam = None
        self.ledger: list[LedgerEntry] = []
        self.certs: list[Certificate] = []
        self.empirical = False
        self.note("classical cluster set", f"Gamma_x(I) = {g.set.to_text()} ({g.exactness})",
                  "checked" if self.gam_exact else "assumed")

    @property
    def lam(self):
        if self._lam is None:
            self._lam = limit_point_set(self.x, self.I)
        return self._lam

    def note(self, theorem: str, hypothesis: str, status: str) -> None:
        e = LedgerEntry(theorem, hypothesis, status)
        if e not in self.ledger:
            self.ledger.append(e)

    def cert(self, kind: str, eta, text: str) -> None:
        c = Certificate(kind, None if eta is None else Q(eta), text)
        if c not in self.certs:
            self.certs.append(c)

    def hit(self, A: RealSet) -> str:
        return hit_status(self.x, self.I, A)

    def hit_expr(self, A: RealSet) -> IndexSetExpr | None:
        try:
            return hit_set(self.x, A)
        except (Undecidable, Unsupported):
            return None

    def comp_hit(self, A: RealSet) -> tuple[str, IndexSetExpr | None]:
        """Status of ``{n : x_n not in A}``."""
        H = self.hit_expr(A)
        if H is not None:
            S = normalize(Not(H))
            try:
                return membership(self.I, S), S
            except Undecidable:
                return UNKNOWN, S
        if isinstance(self.x, VanDerCorput) and not A.tails:
            return hit_status(self.x, self.I, A.complement()), None
        return UNKNOWN, None

    def positive(self, S: IndexSetExpr) -> bool | None:
        m = membership(self.I, S)
        return None if m == UNKNOWN else m == POSITIVE

    def report(self, which: str, inner: RealSet, outer: RealSet) -> SetReport:
        if self.model:
            inner, outer = _canonical_model(inner), _canonical_model(outer)
        if same_set(inner, outer):
            outer = inner
        if self.empirical:
            grade = EMPIRICAL
        elif inner == outer:
            grade = EXACT
        else:
            grade = BOUNDS
        if not inner.subset_of(outer):
            raise AssertionError(f"{which}: inner bound escapes the outer bound")
        return SetReport(which, inner, outer, grade, list(self.ledger), list(self.certs))


def same_set(a: RealSet, b: RealSet) -> bool:
    """Set equality independent of the atom decomposition."""
    return a == b or (a.subset_of(b) and b.subset_of(a))


def _canonical_model(A: RealSet) -> RealSet:
    A = A & MODEL_SPACE
    return MODEL_SPACE if same_set(A, MODEL_SPACE) else A


def _compact(A: RealSet) -> bool:
    return A.is_closed() and A.is_bounded()


# -- set geometry ----------------------------------------------------------------------

def _zero_set(r: RadiusFunction) -> RealSet:
    """``{eta : r(eta) = 0}`` (finite points plus whole pieces where r vanishes)."""
    from .piecewise import _poly_roots
    out = RealSet.empty()
    for p in r.pieces:
        dom = p.domain
        if p.alpha == p.beta == p.gamma == 0:
            out = out | RealSet.of([dom])
            continue
        # r(x) = alpha + beta x + gamma / x vanishes where beta x^2 + alpha x + gamma = 0
        cands = [lo for lo, hi in _poly_roots(p.beta, p.alpha, p.gamma, dom.lo, dom.hi) if lo == hi]
        cands += [e for e in (dom.lo, dom.hi) if e not in (-INF, INF)]
        for z in cands:
            z = Q(z)
            if dom.contains(z) and p(z) == 0:
                out = out | points(z)
    return out


def _truncations(G: RealSet, K: int) -> tuple[RealSet, RealSet]:
    """Tail-free sets ``G_in`` inside ``G`` and ``G_out`` containing it (tails cut at ``K``)."""
    pts_in = list(G.points)
    ivs_out = list(G.intervals)
    pts_out = list(G.points)
    for t in G.tails:
        members = [t.member(j) for j in range(K)]
        pts_in += members
        pts_out += members
        if t.closed:
            pts_in.append(t.center)
        h = Tail(t.center, t.dev(K), t.ratio, True).hull()
        ivs_out.append(h)
    ivs_in = [iv for iv in G.intervals]
    return RealSet.of(ivs_in, pts_in), RealSet.of(ivs_out, pts_out)


def _closure_ivs(G: RealSet) -> RealSet:
    return RealSet.of([Interval(iv.lo, iv.hi, iv.lo != -INF, iv.hi != INF) for iv in G.intervals],
                      G.points)


def ball_meet(r: RadiusFunction, G: RealSet, closed: bool) -> tuple[RealSet, RealSet]:
    """Bounds for ``{eta : B_r(eta) meets G}`` (closed or open balls)."""
    if G.is_empty():
        return RealSet.empty(), RealSet.empty()
    if G.naturals_from is not None:
        raise Unsupported("ball meets with integer atoms")
    zero = _zero_set(r)
    best = None
    for K in (8, 16, 32, 64):
        g_in, g_out = _truncations(G, K) if G.tails else (G, G)
        sol_in = solve_le(near_distance(_closure_ivs(g_in)), r, strict=not closed)
        sol_out = solve_le(near_distance(_closure_ivs(g_out)), r, strict=False)
        inner, outer = sol_in.inner, sol_out.outer
        if not closed:
            inner = inner | (zero & G)
        best = (inner, outer)
        if not G.tails or same_set(inner, outer):
            break
    return best


def _far_solution(r: RadiusFunction, G: RealSet, strict: bool) -> RealSet:
    sol = solve_le(far_distance(G), r, strict=strict)
    return sol.inner if strict else sol.outer


def _resolve(inner: RealSet, outer: RealSet, decide: Callable[[Fraction], PointVerdict]
             ) -> tuple[RealSet, RealSet]:
    """Decide the finitely many points of ``outer \\ inner`` one by one."""
    try:
        diff = outer.minus(inner)
    except ValueError:
        return inner, outer
    if diff.is_empty() or not diff.is_finite():
        return inner, outer
    for p in diff.points:
        v = decide(p)
        if v.member is True:
            inner = inner | points(p)
        elif v.member is False:
            outer = outer.remove_points([p])
    return inner, outer


# -- separating witnesses ----------------------------------------------------------------

def separating_witness(x: SequenceSpec, I: IdealModel, eta, A: RealSet,
                       max_J: int = 64) -> SeparatingWitness | None:
    """An open ``U`` containing ``A`` whose hit set is verified to lie in ``I``.

    Complement form: ``C_J`` collects the stream limits, every stream value of index at
    least ``J`` and every value with a positive level set; ``U = R \\ C_J`` is open, holds
    ``A`` once ``A`` misses ``C_J``, and its hit set is a finite union of level sets in
    the ideal.
    """
    if hit_status(x, I, A) != IN:
        return None
    if isinstance(x, VanDerCorput):
        if (A & interval(0, 1)).is_empty():
            return SeparatingWitness(interval(0, 1), None, None, IN)
        return None
    if isinstance(x, Natural):
        H = hit_set(x, A)
        elems = H.elements() if hasattr(H, "elements") else None
        try:
            fin = sorted(elems) if elems is not None else None
        except TypeError:
            fin = None
        if fin is None:
            return None
        M = (max(fin) + 1) if fin else 0
        C = RealSet.of(points=[k for k in range(M) if k not in fin], naturals_from=M)
        hits = normalize(Not(hit_set(x, C)))
        if membership(I, hits) == IN and not A.intersects(C):
            return SeparatingWitness(C, None, hits, IN)
        return None
    asg = x.assignment()
    if asg is None:
        return None
    # trivial case: A sits at positive distance from the closure of the values
    vals = asg.values_closure()
    if A.is_bounded() and not A.tails and A.naturals_from is None and not A.intersects(vals):
        gaps = [vals.distance(p) for p in A.points]
        if not A.intervals and gaps and min(gaps) > 0:
            U = A.open_dilate(min(gaps) / 2)
            hits = hit_set(x, U)
            if membership(I, hits) == IN:
                return SeparatingWitness(None, U, hits, IN)
    try:
        cells = disjoint_cells(asg)
        for J in range(max_J + 1):
            C = RealSet.empty()
            for c in cells:
                s = c.stream
                if s.constant:
                    if membership(I, c.index) == POSITIVE:
                        C = C | points(s.a)
                    continue
                C = C | RealSet.of(tails=[s.tail(J, True)])
                for j in range(J):
                    if membership(I, normalize(Inter((c.index, level_set(s.by, j))))) != IN:
                        C = C | points(s.value(j))
            if A.intersects(C):
                continue
            hits = normalize(Not(hit_set(x, C)))
            if membership(I, hits) == IN:
                return SeparatingWitness(C, None, hits, IN)
            return None
    except (Undecidable, Unsupported):
        return None
    return None


# -- point rules -------------------------------------------------------------------------

def _oracle_point(ctx: _Ctx, which: str, eta) -> PointVerdict:
    test = {"gamma": approx_gamma_member, "lim": approx_lim_member,
            "lambda": approx_lambda_member}[which]
    v = test(ctx.x, ctx.I, ctx.F, eta, ctx.cfg)
    ctx.empirical = True
    ctx.note("oracle fallback", f"{which} membership at {fmt_num(Q(eta))} estimated on a prefix "
             f"of length {ctx.cfg.prefix}", "assumed")
    return PointVerdict(v.member, "R5 oracle", True)


def gamma_point(ctx: _Ctx, eta, use_oracle: bool = True) -> PointVerdict:
    eta = Q(eta)
    A = ctx.F.at(eta)
    hs = ctx.hit(A)
    if hs == POSITIVE:
        ctx.note("R1 hit set positive", f"{{n : x_n in F_{fmt_num(eta)}}} is I-positive", "checked")
        return PointVerdict(True, "R1")
    confined = _compact(A) or (A.is_closed() and ctx.bounded)
    if confined and ctx.gam_exact:
        ctx.note("R2 closed sets with compact confinement",
                 "F_eta compact, or closed with x bounded", "checked")
        return PointVerdict(A.intersects(ctx.gam), "R2")
    if A.is_open() and hs == IN:
        ctx.note("R3 open F_eta", "F_eta is its own smallest open superset", "checked")
        return PointVerdict(False, "R3")
    if hs == IN:
        w = separating_witness(ctx.x, ctx.I, eta, A)
        if w is not None:
            ctx.cert("separating open set", eta, w.to_text())
            ctx.note("R4 separating witness", "hit set of U verified in the ideal", "checked")
            return PointVerdict(False, "R4")
    if not use_oracle:
        return PointVerdict(None, "none")
    return _oracle_point(ctx, "gamma", eta)


def lim_point(ctx: _Ctx, eta, use_oracle: bool = True) -> PointVerdict:
    eta = Q(eta)
    A = ctx.F.at(eta)
    cs, S = ctx.comp_hit(A)
    if cs == IN:
        ctx.note("L1 complement hits small", "{n : x_n not in F_eta} is in the ideal", "checked")
        return PointVerdict(True, "L1")
    if A.is_closed() and ctx.bounded and ctx.gam_exact:
        ctx.note("L2 characterization Gamma_x(I) in F_eta",
                 "F_eta closed, x bounded, regular space", "checked")
        return PointVerdict(ctx.gam.subset_of(A), "L2")
    if A.is_open() and cs == POSITIVE:
        return PointVerdict(False, "L3")
    if A.is_bounded():
        U = A.open_dilate(1)
        cu, _ = ctx.comp_hit(U)
        if cu == POSITIVE:
            ctx.cert("escaping neighborhood", eta, f"U = {U.to_text()} has I-positive complement hits")
            return PointVerdict(False, "L4")
    g = gamma_point(ctx, eta, use_oracle=False)
    if g.member is False:
        ctx.note("inclusion Lim in Gamma", "non-members of Gamma are non-members of Lim", "checked")
        return PointVerdict(False, "Lim in Gamma")
    if not use_oracle:
        return PointVerdict(None, "none")
    return _oracle_point(ctx, "lim", eta)


def _fin_diagonal_ok(ctx: _Ctx, A: RealSet) -> bool:
    # countable neighborhood base of F_eta: dilations (compact) or F_eta itself (open)
    return ctx.I.kind == "Fin" and (_compact(A) or A.is_open())


def lambda_point(ctx: _Ctx, eta, use_oracle: bool = True) -> PointVerdict:
    eta = Q(eta)
    A = ctx.F.at(eta)
    if A.intersects(ctx.lam.set):
        ctx.note("lower bound F_eta meets Lambda_x(I)", "no hypotheses", "cited")
        return PointVerdict(True, "meets Lambda_x(I)")
    if isinstance(ctx.F, Degenerate) and ctx.lam.exactness == SEQ_EXACT:
        return PointVerdict(False, "classical Lambda_x(I)")
    if ctx.hit(A) == POSITIVE:
        ctx.note("hit-set witness", "S = {n : x_n in F_eta} is positive and x_S stays in F_eta",
                 "checked")
        return PointVerdict(True, "hit set")
    g = gamma_point(ctx, eta, use_oracle=False)
    if g.member is False:
        return PointVerdict(False, "Lambda in Gamma")
    if g.member is True and _fin_diagonal_ok(ctx, A):
        ctx.note("P+ diagonal selection", "Fin is P+; F_eta has a countable neighborhood base",
                 "checked")
        return PointVerdict(True, "P+ diagonal")
    try:
        dv = lambda_via_distance(ctx.x, eta, ctx.F, ctx.I)
        if dv.member is not None:
            ctx.note("distance criterion", "F_eta closed ball (real line) or UC space", "checked")
            return PointVerdict(dv.member, "distance")
    except Refusal:
        pass
    if not use_oracle:
        return PointVerdict(None, "none")
    return _oracle_point(ctx, "lambda", eta)


# -- classical helpers ----------------------------------------------------------------------

def _positive_tail_limits(ctx: _Ctx) -> RealSet | None:
    """Stream limits approached along an I-positive set of indices (plus vdc's [0,1])."""
    if isinstance(ctx.x, VanDerCorput):
        return interval(0, 1) if ctx.I.kind in ("Fin", "Z") else None
    asg = ctx.x.assignment()
    if asg is None:
        return RealSet.empty()
    out = RealSet.empty()
    try:
        for c in disjoint_cells(asg):
            if c.stream.constant:
                continue
            _, pos = _cell_cluster(ctx.I, c)
            if pos:
                out = out | points(c.stream.a)
    except Undecidable:
        return None
    return out


# -- uniform families --------------------------------------------------------------------

def _model_meet(G: RealSet) -> RealSet:
    return MODEL_SPACE if G.contains(0) else G & MODEL_SPACE


def _uniform_gamma(ctx: _Ctx, F: RoughFamily) -> tuple[RealSet, RealSet]:
    G = ctx.gam
    if isinstance(F, Degenerate):
        ctx.note("degenerate family", "Gamma_x(I, F) is the classical Gamma_x(I)", "cited")
        return G, G
    if isinstance(F, ModelFamily):
        ctx.note("R2 closed sets with compact confinement", "F_eta finite in a compact space",
                 "checked")
        return _model_meet(G), _model_meet(G)
    if isinstance(F, Ball):
        if F.closed:
            ctx.note("R2 closed sets with compact confinement",
                     "closed balls are compact: F_eta meets Gamma_x(I)", "checked")
            return ball_meet(F.radius, G, True)
        ctx.note("R3 open F_eta", "member iff the open ball's hit set is positive; "
                 "dist < r members, dist = r decided pointwise", "checked")
        inner, _ = ball_meet(F.radius, G, False)
        _, outer = ball_meet(F.radius, G, True)
        return _resolve(inner, outer, lambda p: gamma_point(ctx, p))
    raise Unsupported(f"family {F.to_text()}")


def _uniform_lim(ctx: _Ctx, F: RoughFamily, G: RealSet | None = None) -> tuple[RealSet, RealSet]:
    G = ctx.gam if G is None else G
    if not ctx.bounded:
        if isinstance(F, (Degenerate, Ball)) and (not isinstance(F, Ball) or F.radius.is_bounded()):
            ctx.note("unbounded sequence", "bounded F_eta leaves complement hits cofinite",
                     "checked")
            return RealSet.empty(), RealSet.empty()
        raise Unsupported("Lim for unbounded sequences with unbounded F_eta")
    ctx.note("L2 characterization Gamma_x(I) in F_eta",
             "closed F_eta, relatively compact image, regular space", "checked")
    if G.is_empty():
        return RealSet.real_line() if not ctx.model else MODEL_SPACE, RealSet.real_line()
    if isinstance(F, Degenerate):
        one = G.is_finite() and len(G.points) == 1 and not G.intervals
        s = G if one else RealSet.empty()
        return s, s
    if isinstance(F, ModelFamily):
        rest = G.remove_points([0]) if G.contains(0) else G
        if rest.is_empty():
            return MODEL_SPACE, MODEL_SPACE
        if rest.is_finite() and len(rest.points) == 1 and not rest.intervals:
            return rest, rest
        return RealSet.empty(), RealSet.empty()
    if isinstance(F, Ball):
        if F.closed:
            s = _far_solution(F.radius, G, strict=False)
            return s, s
        inner = _far_solution(F.radius, G, strict=True)
        outer = _far_solution(F.radius, G, strict=False)
        return _resolve(inner, outer, lambda p: lim_point(ctx, p))
    raise Unsupported(f"family {F.to_text()}")


def _uniform_lambda_inner(ctx: _Ctx, F: RoughFamily) -> RealSet:
    L = ctx.lam.set
    if isinstance(F, Degenerate):
        return L
    if isinstance(F, ModelFamily):
        return _model_meet(L)
    if isinstance(F, Ball):
        inner, _ = ball_meet(F.radius, L, F.closed) if not L.is_empty() else (RealSet.empty(), None)
        P = _positive_tail_limits(ctx)
        if P is not None and not P.is_empty():
            ctx.note("hit-set witness", "balls around a positively-approached limit (or a "
                     "positive-measure part of an equidistributed range) have positive hit sets",
                     "checked")
            hit_in, _ = ball_meet(F.radius, P if not P.intervals else P, False)
            if P.intervals:
                # positive measure needs dist(eta, P) < r(eta), never a single touching point
                hit_in = solve_le(near_distance(P), F.radius, strict=True).inner
            inner = inner | hit_in
        return inner
    raise Unsupported(f"family {F.to_text()}")


def _family_diag_ok(ctx: _Ctx, F: RoughFamily) -> bool:
    if ctx.I.kind != "Fin":
        return False
    return isinstance(F, (Degenerate, ModelFamily, Ball))


# -- tables -------------------------------------------------------------------------------

def _default_sets_closed(F: RoughFamily) -> bool:
    return isinstance(F, (Degenerate, ModelFamily)) or (isinstance(F, Ball) and F.closed)


def _table_gamma(ctx: _Ctx, T: Table) -> tuple[RealSet, RealSet]:
    inner, outer = _uniform_gamma(ctx, T.default)
    G = ctx.gam
    for reg in T.regions:
        where, K = RealSet.of([reg.where]), reg.extra
        if K.intersects(G):
            ctx.note("first inclusion", "F_eta meets Gamma_x(I) throughout the region", "checked")
            inner, outer = inner | where, outer | where
        elif ctx.hit(K) == POSITIVE:
            ctx.note("R1 hit set positive", "the region's added set is hit positively", "checked")
            inner, outer = inner | where, outer | where
        elif (_compact(K) or (K.is_closed() and ctx.bounded)) and _default_sets_closed(T.default):
            ctx.note("R2 closed sets with compact confinement",
                     "added set misses Gamma_x(I): region follows the default", "checked")
        else:
            outer = outer | where
    for e, _S in T.overrides:
        inner, outer = inner.remove_points([e]), outer.remove_points([e])
        v = gamma_point(ctx, e)
        if v.member:
            inner, outer = inner | points(e), outer | points(e)
    return inner, outer


def _table_lim(ctx: _Ctx, T: Table) -> tuple[RealSet, RealSet]:
    try:
        inner, outer = _uniform_lim(ctx, T.default)
    except Unsupported:
        inner, outer = RealSet.empty(), _table_gamma(ctx, T)[1]
    G = ctx.gam
    for reg in T.regions:
        where, K = RealSet.of([reg.where]), reg.extra
        if not (ctx.bounded and K.is_closed() and not K.tails and _default_sets_closed(T.default)):
            cs, _ = ctx.comp_hit(K)
            if cs == IN:
                inner, outer = inner | where, outer | where
            elif ctx.bounded or not K.is_bounded():
                outer = outer | where
            continue
        rest = G.minus(K)
        if rest.is_empty():
            part = where
        elif isinstance(T.default, Degenerate):
            cl = rest.closure()
            part = cl & where if (cl.is_finite() and len(cl.points) == 1) else RealSet.empty()
        elif isinstance(T.default, Ball):
            part = _far_solution(T.default.radius, rest, strict=False) & where
        else:
            outer = outer | where
            continue
        inner, outer = inner | part, outer | part
    for e, _S in T.overrides:
        inner, outer = inner.remove_points([e]), outer.remove_points([e])
        v = lim_point(ctx, e)
        if v.member:
            inner, outer = inner | points(e), outer | points(e)
    return inner, outer


def _table_lambda_inner(ctx: _Ctx, T: Table) -> RealSet:
    inner = _uniform_lambda_inner(ctx, T.default)
    for reg in T.regions:
        where, K = RealSet.of([reg.where]), reg.extra
        if K.intersects(ctx.lam.set) or ctx.hit(K) == POSITIVE:
            inner = inner | where
    return inner.remove_points([e for e, _ in T.overrides])


# -- public operations -----------------------------------------------------------------------

def _oracle_set(ctx: _Ctx, which: str) -> tuple[RealSet, RealSet]:
    ctx.empirical = True
    ctx.note("oracle fallback", f"{which} estimated on the grid {fmt_num(ctx.cfg.lo)}..{fmt_num(ctx.cfg.hi)} "
             f"step {fmt_num(ctx.cfg.grid_step)}, prefix {ctx.cfg.prefix}", "assumed")
    s = grid_to_set(grid_set(ctx.x, ctx.I, ctx.F, which, ctx.cfg), ctx.cfg.grid_step)
    return s, s


def _gamma_sets(ctx: _Ctx) -> tuple[RealSet, RealSet]:
    F = ctx.F
    if not ctx.gam_exact:
        return _oracle_set(ctx, "gamma")
    if isinstance(F, Table):
        return _table_gamma(ctx, F)
    return _uniform_gamma(ctx, F)


def gamma_rough(x: SequenceSpec, I: IdealModel, F: RoughFamily,
                cfg: OracleConfig | None = None) -> SetReport:
    """``Gamma_x(I, F)``."""
    ctx = _Ctx(x, I, F, cfg)
    inner, outer = _gamma_sets(ctx)
    return ctx.report("gamma", inner, outer)


def lim_rough(x: SequenceSpec, I: IdealModel, F: RoughFamily,
              cfg: OracleConfig | None = None) -> SetReport:
    """``Lim_x(I, F)`` via ``{eta : Gamma_x(I) subset F_eta}`` where the hypotheses hold."""
    ctx = _Ctx(x, I, F, cfg)
    if not ctx.gam_exact and ctx.bounded:
        inner, outer = _oracle_set(ctx, "lim")
    elif isinstance(F, Table):
        inner, outer = _table_lim(ctx, F)
    else:
        try:
            inner, outer = _uniform_lim(ctx, F)
        except Unsupported:
            inner, outer = _oracle_set(ctx, "lim")
    return ctx.report("lim", inner, outer)


def lambda_rough(x: SequenceSpec, I: IdealModel, F: RoughFamily,
                 cfg: OracleConfig | None = None) -> SetReport:
    """``Lambda_x(I, F)``: inner bound from classical limit points and hit-set witnesses,
    outer bound ``Gamma_x(I, F)``; exact when the two meet or a structural rule applies."""
    ctx = _Ctx(x, I, F, cfg)
    g_in, g_out = _gamma_sets(ctx)
    ctx.note("inclusion Lambda in Gamma", "outer bound is the Gamma report", "cited")
    if _family_diag_ok(ctx, F) and not ctx.empirical:
        ctx.note("P+ diagonal selection", "Fin is P+ and every F_eta has a countable "
                 "neighborhood base, so Lambda = Gamma", "checked")
        return ctx.report("lambda", g_in, g_out)
    if ctx.empirical:
        return ctx.report("lambda", *_oracle_set(ctx, "lambda"))
    if isinstance(F, Degenerate) and ctx.lam.exactness == SEQ_EXACT:
        ctx.note("degenerate family", "Lambda_x(I, F) is the classical Lambda_x(I) = "
                 f"{ctx.lam.set.to_text()}", "cited")
        return ctx.report("lambda", ctx.lam.set, ctx.lam.set)
    comps = _equidistributed_parts(x)
    if comps is not None and I.kind == "Z" and isinstance(F, Ball) and F.closed:
        ivs, pts = comps
        s = RealSet.empty()
        for iv in ivs:
            s = s | solve_le(near_distance(iv), F.radius, strict=True).inner
        if pts:
            s = s | solve_le(near_distance(points(*pts)), F.radius).inner
        ctx.note("distance criterion", "closed balls on the line; equidistribution gives "
                 "eta in Lambda iff F_eta meets an interval component in positive length "
                 "or meets a point component", "checked")
        return ctx.report("lambda", s, s)
    if ctx.lam.exactness == SEQ_EXACT:
        ctx.note("lower bound F_eta meets Lambda_x(I)",
                 f"Lambda_x(I) = {ctx.lam.set.to_text()}", "cited")
    if isinstance(F, Table):
        inner = _table_lambda_inner(ctx, F)
    else:
        inner = _uniform_lambda_inner(ctx, F)
    inner = inner & g_in if g_in == g_out else inner
    outer = g_out
    inner, outer = _resolve(inner, outer, lambda p: lambda_point(ctx, p, use_oracle=False))
    if isinstance(F, Table):
        for e, _S in F.overrides:
            inner, outer = inner.remove_points([e]), outer.remove_points([e])
            v = lambda_point(ctx, e)
            if v.member:
                inner, outer = inner | points(e), outer | points(e)
            elif v.member is None and g_out.contains(e):
                outer = outer | points(e)
    if not inner.subset_of(outer):
        inner = inner & outer
    return ctx.report("lambda", inner, outer)


def _equidistributed_parts(x: SequenceSpec):
    """(interval components, point components) for sequences equidistributed on each
    interval component and constant on a positive-density class at each point."""
    if isinstance(x, VanDerCorput):
        return [interval(0, 1)], []
    if isinstance(x, DenseCover):
        ivs = [interval(a, b) for a, b in x.components if a < b]
        return ivs, [a for a, b in x.components if a == b]
    return None


# -- Lim* ------------------------------------------------------------------------------------

def limstar_search(x: SequenceSpec, I: IdealModel, A: RealSet
                   ) -> tuple[bool | None, IndexSetExpr | None, str]:
    """Search the representable class for ``S in I`` with ``x`` off ``S`` convergent to ``A``.

    Returns ``(True, S, why)``, ``(False, None, refutation)`` or ``(None, None, why)``.
    """
    asg = x.assignment()
    if asg is None:
        return None, None, "not an assignment"
    parts: list[IndexSetExpr] = []
    try:
        for c in disjoint_cells(asg):
            s, eff = c.stream, c.index
            if membership(I, eff) == IN:
                parts.append(eff)
                continue
            if s.constant:
                if A.contains(s.a):
                    continue
                return False, None, f"value {fmt_num(s.a)} outside F_eta on a positive set"
            from .sequences import stream_hits
            B = normalize(Inter((eff, Not(stream_hits(s, A)))))
            mB = membership(I, B)
            if mB == IN:
                parts.append(B)
                continue
            if mB == UNKNOWN:
                return None, None, f"status of {B.to_text()} unknown"
            if not A.contains(s.a):
                return False, None, f"stream limit {fmt_num(s.a)} outside F_eta on a positive set"
            if s.by == "n":
                continue  # level sets are single indices
            if s.by == "row":
                parts.append(normalize(Inter((B, Not(Stair(1, 1))))))
                continue
            if s.by == "col":
                return False, None, (
                    f"{B.to_text()} has infinitely many infinite columns with values outside "
                    "F_eta; a set in the ideal keeps all but finitely many of them")
            return None, None, "2-adic streams are not searched"
        S = normalize(Union(tuple(parts))) if parts else normalize(Union(()))
        if membership(I, S) != IN:
            return None, None, "assembled S is not in the ideal"
        return True, S, "S assembled from small cells, small bad sets and staircase cuts"
    except Undecidable as exc:
        return None, None, str(exc)


def _limstar_point(ctx: _Ctx, eta) -> PointVerdict:
    eta = Q(eta)
    A = ctx.F.at(eta)
    cs, S = ctx.comp_hit(A)
    if cs == IN:
        ctx.cert("deleted set", eta, f"S = {S.to_text() if S is not None else '{n : x_n not in F_eta}'}")
        return PointVerdict(True, "complement hits in the ideal")
    if ctx.I.is_P and (_compact(A) or A.is_open()):
        return lim_point(ctx, eta)
    ok, S, why = limstar_search(ctx.x, ctx.I, A)
    if ok is True:
        ctx.cert("deleted set", eta, f"S = {S.to_text()}")
    elif ok is False:
        ctx.cert("refutation", eta, why + " (representable class)")
    return PointVerdict(ok, "search")


def _troubled_streams(ctx: _Ctx) -> tuple[list, bool]:
    """Column streams on positive cells (and whether any 2-adic stream is unresolved)."""
    asg = ctx.x.assignment()
    cols, v2 = [], False
    if asg is None:
        return cols, True
    for c in disjoint_cells(asg):
        s = c.stream
        if s.constant or membership(ctx.I, c.index) == IN:
            continue
        if s.by == "col":
            cols.append(c)
        elif s.by == "v2":
            v2 = True
    return cols, v2


def lim_star_rough(x: SequenceSpec, I: IdealModel, F: RoughFamily,
                   cfg: OracleConfig | None = None) -> SetReport:
    """``Lim_x(I*, F)``: deletions of a set in the ideal followed by ordinary convergence."""
    lim = lim_rough(x, I, F, cfg)
    ctx = _Ctx(x, I, F, cfg)
    ctx.ledger = list(lim.ledger)
    ctx.certs = list(lim.certificates)
    ctx.empirical = lim.grade == EMPIRICAL
    ctx.note("inclusion Lim* in Lim", "every I*-limit is an I-limit", "cited")
    uniform_ok = isinstance(F, (Degenerate, ModelFamily, Ball))
    if I.kind == "Fin":
        ctx.note("Fin* = Fin", "delete the finite exceptional set", "cited")
        return ctx.report("limstar", lim.inner, lim.outer)
    if I.is_P and uniform_ok:
        ctx.note("P-ideal equivalence", "I is a P-ideal and each F_eta has a countable "
                 "neighborhood base (compact or open)", "checked")
        return ctx.report("limstar", lim.inner, lim.outer)
    if isinstance(F, Table):
        inner, outer = lim.inner, lim.outer
        if not I.is_P:
            inner = RealSet.empty()
        pts = [e for e, _ in F.overrides]
        for e in pts:
            inner, outer = inner.remove_points([e]), outer.remove_points([e])
            if lim.outer.contains(e):
                v = _limstar_point(ctx, e)
                if v.member:
                    inner, outer = inner | points(e), outer | points(e)
                elif v.member is None:
                    outer = outer | points(e)
        return ctx.report("limstar", inner, outer)
    # non-P ideal with a uniform family
    cols, v2 = _troubled_streams(ctx)
    finite_sets = isinstance(F, (Degenerate, ModelFamily))
    if not cols and not v2:
        ctx.note("staircase pseudo-unions", "no column streams on positive cells: every "
                 "Lim point has a representable deleted set", "checked")
        return ctx.report("limstar", lim.inner, lim.outer)
    if cols and finite_sets:
        c = cols[0]
        ctx.cert("refutation", None,
                 f"cell {c.index.to_text()} carries {c.stream.to_text()}: finite F_eta leaves "
                 "infinitely many infinite columns outside it; any S in the ideal misses "
                 "all but finitely many of them (representable class)")
        ctx.note("column refutation", "finite F_eta and a positive column stream", "checked")
        return ctx.report("limstar", RealSet.empty(), RealSet.empty())
    if lim.inner.is_finite():
        inner, outer = RealSet.empty(), RealSet.empty()
        for p in lim.inner.points:
            v = _limstar_point(ctx, p)
            if v.member:
                inner, outer = inner | points(p), outer | points(p)
            elif v.member is None:
                outer = outer | points(p)
        return ctx.report("limstar", inner, outer)
    return ctx.report("limstar", RealSet.empty(), lim.outer)


# -- m functions --------------------------------------------------------------------------------

@dataclass(frozen=True)
class MFunctions:
    G: RealSet
    radius: RadiusFunction

    def m(self, eta) -> Fraction:
        eta = Q(eta)
        lo, hi = self.G.bounds()
        return max(abs(Q(lo) - eta), abs(Q(hi) - eta)) - self.radius(eta)

    def m_tilde(self, eta) -> Fraction:
        eta = Q(eta)
        return self.G.distance(eta) - self.radius(eta)


def m_functions(x: SequenceSpec, I: IdealModel, F: Ball) -> MFunctions:
    """``m_x(eta) = max dist - r`` and ``m~_x(eta) = min dist - r`` over ``Gamma_x(I)``."""
    if not isinstance(F, Ball):
        raise TypeError("m functions are defined for ball families")
    g = cluster_set(x, I)
    if g.exactness != SEQ_EXACT:
        raise ValueError("Gamma_x(I) is not exactly computable")
    if g.set.is_empty() or not g.set.is_bounded():
        raise ValueError("m functions need a nonempty compact Gamma_x(I)")
    return MFunctions(g.set, F.radius)


def inner_cluster_set(x: SequenceSpec, I: IdealModel, F: RoughFamily, closure: bool = False,
                      candidates=None) -> RealSet:
    """``{eta : F_eta meets Gamma_x(I)}`` (or with the closure of ``F_eta``).

    Uniform families are solved in closed form; tables combine the default with the
    regions and recheck the override points.
    """
    G = cluster_set(x, I).set
    if isinstance(F, Degenerate):
        return G
    if isinstance(F, Ball):
        inner, outer = ball_meet(F.radius, G, F.closed or closure)
        return inner
    if isinstance(F, ModelFamily):
        return _model_meet(G)
    if isinstance(F, Table):
        out = inner_cluster_set(x, I, F.default, closure)
        for reg in F.regions:
            K = reg.extra.closure() if closure else reg.extra
            if K.intersects(G):
                out = out | RealSet.of([reg.where])
        for e, S in F.overrides:
            out = out.remove_points([e])
            A = S.closure() if closure else S
            if A.intersects(G):
                out = out | points(e)
        return out
    raise Unsupported(f"family {F.to_text()}")


def compute_all(x: SequenceSpec, I: IdealModel, F: RoughFamily,
                cfg: OracleConfig | None = None) -> dict[str, SetReport]:
    return {"lim": lim_rough(x, I, F, cfg), "limstar": lim_star_rough(x, I, F, cfg),
            "gamma": gamma_rough(x, I, F, cfg), "lambda": lambda_rough(x, I, F, cfg)}
