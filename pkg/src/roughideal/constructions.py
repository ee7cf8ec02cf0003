"""Executable constructions and counterexamples, each with a machine-checked checklist.

A universally quantified nonexistence claim ("no S in I works") cannot be checked over
all subsets of omega; such claims are refuted over the representable class of index
sets, and the certificate says so.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .engine import (
    EMPIRICAL, EXACT, gamma_rough, inner_cluster_set, lambda_rough, lim_rough,
    lim_star_rough, limstar_search, same_set,
)
from .exact_sets import Q, RealSet, fmt_num, interval, naturals, points, tail
from .ideals import (
    FINXFIN_P_PLUS_WITNESS, FINXFIN_P_WITNESS, IN, POSITIVE, Z_P_PLUS_WITNESS,
    IdealModel, WitnessFamily, ideal, membership, p_plus_property_report, verify_witness,
)
from .omega_sets import (
    ALL, AP, IndexSetExpr, Inter, Not, Range, Stair, finiteness, is_subset,
    level_set, natural_density, normalize, upper_set,
)
from .piecewise import RadiusFunction
from .rough_families import CERTIFIED, Ball, Degenerate, ModelFamily, RoughFamily, example21_family
from .sequences import (
    Assignment, Cell, DenseCover, SequenceSpec, Stream, cluster_set, const, fubini, geometric,
    hit_set, limit_point_set,
)
from .distance import _parity_sets, disjoint_cells


@dataclass(frozen=True)
class Claim:
    text: str
    verdict: bool
    certificate: str
    method: str = "symbolic"  # symbolic | oracle

    def to_json(self) -> dict:
        return {"claim": self.text, "verdict": self.verdict, "certificate": self.certificate,
                "method": self.method}


@dataclass
class ConstructionResult:
    name: str
    objects: dict[str, str] = field(default_factory=dict)
    claims: list[Claim] = field(default_factory=list)
    values: dict = field(default_factory=dict)

    def check(self, text: str, verdict: bool, certificate: str, method: str = "symbolic") -> bool:
        self.claims.append(Claim(text, bool(verdict), certificate, method))
        return bool(verdict)

    @property
    def passed(self) -> bool:
        return bool(self.claims) and all(c.verdict for c in self.claims)

    def lines(self) -> list[str]:
        out = [f"{self.name}: {'PASS' if self.passed else 'FAIL'}"]
        out += [f"  {k} = {v}" for k, v in self.objects.items()]
        for c in self.claims:
            out.append(f"  [{'ok' if c.verdict else 'FAIL'}] {c.text} ({c.method})")
            out.append(f"      {c.certificate}")
        return out

    def to_json(self) -> dict:
        return {"construction": self.name, "passed": self.passed, "objects": dict(self.objects),
                "claims": [c.to_json() for c in self.claims]}


def _symbolic(report) -> bool:
    return report.grade != EMPIRICAL


# -- P-ideal construction ---------------------------------------------------------------

FIN_INITIAL_SEGMENTS = WitnessFamily(
    "[0,k)", "increasing", lambda k: Range(0, k), IN, "finite initial segments")


def bounded_segments(K: int) -> WitnessFamily:
    """``[0, min(k, K))``: an increasing family whose union is already in Fin."""
    return WitnessFamily(f"[0,min(k,{K}))", "increasing", lambda k: Range(0, min(k, K)), IN,
                         f"stabilises at [0,{K})")


def _z_from_family(fam: WitnessFamily, y: Stream) -> tuple[Assignment | None, str]:
    """``z_n = y_k`` on ``I_k \\ I_{k-1}`` for the two representable families."""
    if fam.name == FIN_INITIAL_SEGMENTS.name:
        # I_k \ I_{k-1} = {k-1}: z_n = y_{n+1}
        return Assignment((Cell(ALL, Stream(y.a, y.b * y.q, y.q, "n")),), y.a,
                          label=f"z[{fam.name}]"), "n"
    if fam.name == FINXFIN_P_WITNESS.name:
        # I_k \ I_{k-1} is column k-1: z_n = y_{col(n)+1}
        return Assignment((Cell(ALL, Stream(y.a, y.b * y.q, y.q, "col")),), y.a,
                          label=f"z[{fam.name}]"), "col"
    return None, ""


def z_sequence(I: IdealModel, fam: WitnessFamily, y: Stream, F: RoughFamily | None = None,
               kmax: int = 32) -> ConstructionResult:
    """Increasing family ``(I_k)`` in ``I`` and ``y_k -> eta`` outside ``F_eta`` give ``z``
    with ``(I, F)-lim z = eta``; an ``I*`` certificate then yields a pseudo-union."""
    F = F or Degenerate()
    eta = y.a
    res = ConstructionResult("z_sequence", {"ideal": I.kind, "family": fam.name,
                                            "y": y.to_text(), "eta": fmt_num(eta),
                                            "F": F.to_text()})
    res.check("I_k increasing and in I", not verify_witness(I, fam, kmax),
              f"checked for k <= {kmax}")
    Finf = _union_limit(fam, kmax)
    if Finf is not None and membership(I, Finf) == IN:
        stable = all(is_subset(fam(k), Finf) for k in range(kmax + 1))
        res.objects["I"] = Finf.to_text()
        res.check("I_infinity is in I, so I = I_infinity is a pseudo-union", stable,
                  f"I_k subset of {Finf.to_text()} for k <= {kmax}")
        return res
    Feta = F.at(eta)
    ytail = RealSet.of(tails=[y.tail(0)])
    res.check("y injective, convergent to eta", y.b != 0 and 0 < abs(y.q) < 1,
              f"y_k = {fmt_num(eta)} + {fmt_num(y.b)}*({fmt_num(y.q)})^k")
    res.check("y_k outside F_eta for every k", not Feta.intersects(ytail),
              f"F_eta = {Feta.to_text()} misses {ytail.to_text()}")
    z, by = _z_from_family(fam, y)
    if z is None:
        res.check("family has a representable z", False, "only [0,k) and first-k-columns are wired")
        return res
    res.objects["z"] = z.to_text()
    lim = lim_rough(z, I, F)
    res.check("(I,F)-lim z = eta", lim.set.contains(eta) and _symbolic(lim),
              f"Lim_z(I,F) = {lim.set_text()} [{lim.grade}]")
    ok, S, why = limstar_search(z, I, Feta)
    if I.is_P:
        res.check("I*-certificate exists (P-ideal case)", ok is True,
                  f"S = {S.to_text() if S is not None else '?'}: {why}")
    else:
        res.check("no representable I*-certificate", ok is False,
                  f"{why} (refutation over the representable class)")
        res.check("no representable pseudo-union of (I_k) in I",
                  _refute_pseudo_union(I, fam),
                  "a set containing every I_k mod finite has all columns cofinite: Positive")
    return res


def _union_limit(fam: WitnessFamily, kmax: int) -> IndexSetExpr | None:
    """``I_infinity`` when the family is eventually constant within ``kmax``."""
    last = fam(kmax)
    if is_subset(last, fam(kmax // 2)):
        return last
    return None


def _refute_pseudo_union(I: IdealModel, fam: WitnessFamily) -> bool:
    from .ideals import p_property_report
    rep = p_property_report(I)
    return (not rep.holds) and rep.ok and rep.witness is not None and rep.witness.name == fam.name


# -- Fubini existence example ---------------------------------------------------------------

MODEL_X = tail(1, Fraction(1, 2), 0, closed=True)


def _model_point(k: int) -> Fraction:
    return Fraction(1, 2**k)


def fubini_example(q: int = 10, t_max: int = 12) -> ConstructionResult:
    """One-point compactification, Fin x Fin, ``F_k = {k, omega}``: ``Lim* = {}`` while
    ``Lim = Gamma = Lambda = X``."""
    x, I, F = fubini(), ideal("FinxFin"), ModelFamily()
    res = ConstructionResult("fubini_example", {
        "space": "X = {omega} u omega realised as {0} u {2^-k} (omega -> 0, k -> 2^-k)",
        "ideal": "Fin x Fin (cantor pairing)", "family": F.to_text(), "x": x.to_text()})
    reps = {"limstar": lim_star_rough(x, I, F), "lim": lim_rough(x, I, F),
            "gamma": gamma_rough(x, I, F), "lambda": lambda_rough(x, I, F)}
    for r in reps.values():
        res.values[r.which] = r
    ls = reps["limstar"]
    refutes = [c.text for c in ls.certificates if c.kind == "refutation"]
    res.check("Lim* = {}", ls.set.is_empty() and ls.grade == EXACT and bool(refutes),
              (refutes[0] if refutes else "no refutation") + "")
    # Lim = X: hit-complement of U_t = {omega} u [t, oo) is the union of B_j, j < t
    sub_ok = True
    for t in range(1, t_max + 1):
        U = tail(Fraction(1, 2**t), Fraction(1, 2), 0, closed=True)
        comp = normalize(Not(hit_set(x, U)))
        Bs = [hit_set(x, points(_model_point(j))) for j in range(t)]
        union = normalize(Bs[0] if t == 1 else _union(Bs))
        same = is_subset(comp, union) and is_subset(union, comp)
        small = all(membership(I, B) == IN for B in Bs) and membership(I, comp) == IN
        sub_ok &= same and small
    lim = reps["lim"]
    res.check("Lim = X", same_set(lim.set, MODEL_X) and lim.grade == EXACT and sub_ok,
              f"{{n : x_n not in U_t}} = union of B_j (j < t), each B_j in Fin x Fin, t <= {t_max}")
    T = normalize(Inter((Stair(0, 0, 1), Stair(1, 0))))
    small_vals = hit_set(x, RealSet.of(points=[_model_point(j) for j in range(q)]))
    fin = finiteness(normalize(Inter((T, small_vals))))
    lam = reps["lambda"]
    res.check("Lambda = X", same_set(lam.set, MODEL_X) and lam.grade == EXACT
              and membership(I, T) == POSITIVE and fin.finite,
              f"T = {T.to_text()} is Positive; {{n in T : x_n < {q}}} is finite ({fin})")
    gam = reps["gamma"]
    res.check("Gamma = X", same_set(gam.set, MODEL_X) and gam.grade == EXACT,
              "Lim in Gamma and Gamma in X")
    no_prefix = all(r.grade != EMPIRICAL for r in reps.values()) and all(
        e.status != "assumed" for r in reps.values() for e in r.ledger)
    res.check("no prefix estimation in any certificate", no_prefix,
              "all four reports graded Exact from symbolic rules")
    y = geometric(1, Fraction(1, 2))  # y_k = k in the model
    res.check("y_k = k -> omega with y_k not in F_omega",
              not F.at(0).intersects(RealSet.of(tails=[y.cells[0].stream.tail(0)])),
              "F_omega = {omega} and y_k = 2^-k != 0")
    th = F.tau_hat()
    res.check("eta -> F_eta is upper-Vietoris continuous", th.status == CERTIFIED, th.note)
    return res


def _union(parts):
    from .omega_sets import Union
    return Union(tuple(parts))


# -- closure approximation -----------------------------------------------------------------

def _clamp(v: Fraction, lo: Fraction, hi: Fraction) -> Fraction:
    return min(max(v, lo), hi)


def closure_approximation(y: SequenceSpec, I: IdealModel, F: Ball, eta, k: int) -> ConstructionResult:
    """``x`` within ``2^-k`` of ``y`` (sup norm) that is ``(I*, F)``-convergent to ``eta``.

    ``U`` is the ``2^-k`` neighbourhood of ``F_eta``; off ``A = {n : y_n not in U}`` each
    value is replaced by its nearest point of ``F_eta``.
    """
    eta = Q(eta)
    res = ConstructionResult("closure_approximation", {"y": y.to_text(), "ideal": I.kind,
                                                        "F": F.to_text(), "eta": fmt_num(eta),
                                                        "k": str(k)})
    if not isinstance(F, Ball) or not F.closed or not F.radius.is_bounded():
        res.check("family is a ball family of uniformly bounded closed sets", False, F.to_text())
        return res
    lim = lim_rough(y, I, F)
    if not res.check("eta in Lim_y(I,F)", lim.set.contains(eta) and _symbolic(lim),
                     f"Lim_y = {lim.set_text()} [{lim.grade}]"):
        return res
    Feta = F.at(eta)
    lo, hi = Q(Feta.bounds()[0]), Q(Feta.bounds()[1])
    eps = Fraction(1, 2**k)
    U = interval(lo - eps, hi + eps, False, False)
    asg = y.assignment()
    A = normalize(Not(hit_set(y, U)))
    res.objects["U"] = U.to_text()
    res.objects["A"] = A.to_text()
    res.check("A = {n : y_n not in U} is in I", membership(I, A) == IN, f"{I.kind} membership of A")
    cells, sup = [], Fraction(0)
    for c in disjoint_cells(asg):
        new, d = _approx_cell(c, lo, hi, U)
        cells += new
        sup = max(sup, d)
    x = Assignment(tuple(cells), _clamp(asg.default, lo, hi) if U.contains(asg.default) else asg.default,
                   space=asg.space, label=f"approx({y.to_text()},{k})")
    res.objects["x"] = x.to_text()
    res.values.update(x=x, A=A, sup=sup)
    res.check("||x - y||_inf < 2^-k", sup < eps, f"sup |x_n - y_n| = {fmt_num(sup)} < {fmt_num(eps)}")
    inside = hit_set(x, Feta)
    res.check("x_n in F_eta off A", is_subset(normalize(Not(A)), inside),
              "{n not in A} subset of {n : x_n in F_eta}, so x off A is F-convergent to eta")
    agree = all(x.value(n) == y.value(n) for n in range(512) if A.contains(n))
    res.check("x = y on A (prefix 512)", agree, "values compared exactly")
    res.check("S = A is an I*-certificate", membership(I, A) == IN,
              f"S = {A.to_text()} in {I.kind}")
    return res


def _approx_cell(c: Cell, lo: Fraction, hi: Fraction, U: RealSet) -> tuple[list[Cell], Fraction]:
    """Cells of ``x`` over one cell of ``y`` and the exact sup of ``|x - y|`` there."""
    s = c.stream

    def fix(v: Fraction) -> Fraction:
        return _clamp(v, lo, hi) if U.contains(v) else v

    if s.constant:
        v = fix(s.a)
        return [Cell(c.index, const(v))], abs(v - s.a)
    a = s.a
    ends = [e for e in (lo, hi, Q(U.intervals[0].lo), Q(U.intervals[0].hi)) if e != a]
    gap = min(abs(e - a) for e in ends) if ends else Fraction(1)
    J0 = s.tail().first_index_below(gap)
    cells = [Cell(normalize(Inter((c.index, level_set(s.by, j)))), const(fix(s.value(j))))
             for j in range(J0)]
    sup = max([abs(fix(s.value(j)) - s.value(j)) for j in range(J0)], default=Fraction(0))
    tail_idx = normalize(Inter((c.index, upper_set(s.by, J0))))
    if not U.contains(a):
        # eventually outside U: these indices are in A and stay untouched
        return cells + [Cell(tail_idx, s)], sup
    if lo < a < hi:
        return cells + [Cell(tail_idx, s)], sup
    if a != lo and a != hi:
        # limit in U but outside F_eta: the whole tail sits on one side, clamp to the end
        e = _clamp(a, lo, hi)
        d = max(abs(s.value(J0) - e), abs(s.value(J0 + 1) - e), abs(a - e))
        return cells + [Cell(tail_idx, const(e))], max(sup, d)
    # limit on the boundary: members on the inner side stay, the others move to a
    inward = 1 if a == lo else -1
    parts = [(tail_idx, J0)] if s.q > 0 else [
        (normalize(Inter((tail_idx, p))), J0 + r) for r, p in enumerate(_parity_for(s, J0))]
    for idx, j in parts:
        dev = s.value(j) - a
        if dev * inward >= 0:
            cells.append(Cell(idx, Stream(a, s.b, s.q, s.by)))
        else:
            cells.append(Cell(idx, const(a)))
            sup = max(sup, abs(dev))
    return cells, sup


def _parity_for(s: Stream, J0: int):
    even, odd = _parity_sets(s.by)
    return (even, odd) if J0 % 2 == 0 else (odd, even)


# -- P+ counterexample -----------------------------------------------------------------------

def p_plus_counterexample(I: IdealModel, y: Stream, F: RoughFamily | None = None,
                          kmax: int = 24) -> ConstructionResult:
    """``x = y_k`` on ``A_k \\ A_{k+1}`` for a decreasing positive family without positive
    pseudo-intersection: ``eta`` is an ``(I, F)``-cluster point but not a limit point."""
    F = F or Degenerate()
    eta = y.a
    if I.is_P_plus:
        raise ValueError(f"{I.kind} is a P+-ideal: Lambda = Gamma for every sequence, "
                         "no counterexample exists")
    fam, by = (Z_P_PLUS_WITNESS, "v2") if I.kind == "Z" else (FINXFIN_P_PLUS_WITNESS, "col")
    x = Assignment((Cell(ALL, Stream(eta, y.b, y.q, by)),), eta, label=f"pplus[{fam.name}]")
    res = ConstructionResult("p_plus_counterexample", {
        "ideal": I.kind, "A_k": fam.name, "y": y.to_text(), "eta": fmt_num(eta),
        "F": F.to_text(), "x": x.to_text()})
    res.check("(A_k) decreasing in I+", not verify_witness(I, fam, kmax), f"checked for k <= {kmax}")
    Feta = F.at(eta)
    res.check("y injective with y_k outside F_eta",
              y.b != 0 and not Feta.intersects(RealSet.of(tails=[y.tail(0)])),
              f"F_eta = {Feta.to_text()}")
    # x_n = y_k exactly on A_k \ A_{k+1}
    layers = all(is_subset(normalize(Inter((fam(k), Not(fam(k + 1))))), hit_set(x, points(y.value(k))))
                 for k in range(8))
    res.check("x = y_k on A_k \\ A_{k+1}", layers, "hit sets compared for k < 8")
    inc = True
    for k0 in range(8):
        U = Feta.open_dilate(2 * abs(y.b * y.q**k0))
        inc &= is_subset(fam(k0), hit_set(x, U)) and membership(I, fam(k0)) == POSITIVE
    extra = ""
    if I.kind == "Z":
        dens = [natural_density(fam(k)).value for k in range(8)]
        extra = f"; d(A_k) = {', '.join(fmt_num(d) for d in dens[:4])}, ..."
    gam = gamma_rough(x, I, F)
    res.check("eta in Gamma_x(I,F)", inc and gam.set.contains(eta),
              f"A_k0 subset of {{n : x_n in U}} for the 2|y_k0 - eta| neighbourhood U{extra}; "
              f"Gamma = {gam.set_text()}")
    lam = lambda_rough(x, I, F)
    pp = p_plus_property_report(I)
    res.check("eta not in Lambda_x(I,F) (representable class)",
              not lam.set.contains(eta) and lam.grade == EXACT and pp.ok and not pp.holds,
              f"any F-convergent A is almost inside every A_k: {fam.certificate}; "
              f"Lambda = {lam.set_text()}")
    res.values.update(gamma=gam, lam=lam, x=x)
    return res


# -- non-UC counterexample ------------------------------------------------------------------

def non_uc_counterexample(n_check: int = 64) -> ConstructionResult:
    """On the line: ``A = {1, 2, ...}``, ``B = {m + 1/(2m)}``, ``F_1 = A``,
    ``x_n = 2^n + 2^-(n+1)`` in ``B``: ``0`` is a limit point of ``d(x, F_1)`` yet ``1`` is
    not a rough limit point."""
    A = naturals(1)
    res = ConstructionResult("non_uc_counterexample", {
        "A": A.to_text(), "B": "{m + 1/(2m) : m >= 1}", "eta": "1", "F_1": "A",
        "x": "x_n = 2^n + 2^-(n+1)"})

    def b(m: int) -> Fraction:
        return m + Fraction(1, 2 * m)

    xs = [Fraction(2**n) + Fraction(1, 2 ** (n + 1)) for n in range(n_check)]
    res.check("x_n in B", all(v == b(2**n) for n, v in enumerate(xs)), "x_n = m + 1/(2m) with m = 2^n")
    z = [A.distance(v) for v in xs]
    res.check("z_n = d(x_n, A) = 2^-(n+1)", all(d == Fraction(1, 2 ** (n + 1)) for n, d in enumerate(z)),
              f"exact for n < {n_check}")
    zseq = geometric(Fraction(1, 2), Fraction(1, 2))
    lp = limit_point_set(zseq, ideal("Fin"))
    res.check("0 in Lambda_z(Fin)", lp.set.contains(0), f"Lambda_z(Fin) = {lp.set.to_text()}")
    res.check("U = R \\ B is open and contains F_1 = A",
              all(not A.contains(b(m)) for m in range(1, n_check)),
              "B is closed (gaps >= 1/2 between its points) and 0 < 1/(2m) < 1 keeps B off the integers")
    res.check("1 not in Lambda_x(Fin, F)", all(v == b(2**n) for n, v in enumerate(xs)),
              "{n in S : x_n not in U} = S for every infinite S, so no subsequence is F-convergent to 1")
    gaps = [b(m) - m for m in range(1, n_check)]
    res.check("A, B disjoint closed with d(A,B) = 0",
              all(g > 0 for g in gaps) and gaps[-1] == Fraction(1, 2 * (n_check - 1)),
              "d(m, B) = 1/(2m) -> 0, so the line lacks the UC property")
    return res


# -- cluster family instance ------------------------------------------------------------------

def cluster_family_instance(C: RealSet, eps) -> ConstructionResult:
    """A sequence with ``Gamma_x(Fin) = C``; ``Gamma_x(Fin, B_eps)`` is the closed ``eps``
    dilation of ``C``, a finite union of intervals of length at least ``2 eps``."""
    eps = Q(eps)
    x = DenseCover(C)
    I = ideal("Fin")
    F = Ball(RadiusFunction.constant(eps), closed=True)
    res = ConstructionResult("cluster_family_instance", {"C": C.to_text(), "eps": fmt_num(eps),
                                                         "x": x.to_text()})
    g = cluster_set(x, I)
    res.check("Gamma_x(Fin) = C", same_set(g.set, C), g.note)
    gr = gamma_rough(x, I, F)
    target = C.dilate(eps)
    res.check("Gamma_x(Fin, B_eps) = C dilated by eps", same_set(gr.set, target) and gr.grade == EXACT,
              f"{gr.set_text()} = {target.to_text()}")
    lens = [Q(iv.hi) - Q(iv.lo) for iv in gr.set.intervals]
    res.check("every component has length >= 2 eps", not gr.set.points and all(L >= 2 * eps for L in lens),
              f"lengths {', '.join(fmt_num(L) for L in lens)}")
    res.values.update(gamma=gr)
    return res


# -- strict inclusions -------------------------------------------------------------------------

def strict_inclusion_example() -> ConstructionResult:
    """``x_n = 2^-n`` with ``F_1 = {2^-n}``, ``F_1/3 = {3^-(n+1)}``: the inner set, the rough
    cluster set and the closure set are ``{0} < {0,1} < {0,1/3,1}``."""
    x, I, F = geometric(1, Fraction(1, 2)), ideal("Fin"), example21_family()
    res = ConstructionResult("strict_inclusion_example", {"x": x.to_text(), "F": F.to_text()})
    inner = inner_cluster_set(x, I, F)
    gam = gamma_rough(x, I, F)
    clo = inner_cluster_set(x, I, F, closure=True)
    res.values.update(inner=inner, gamma=gam.set, closure=clo)
    res.check("inner set = {0}", inner == points(0), inner.to_text())
    res.check("Gamma_x(Fin, F) = {0, 1}", gam.set == points(0, 1) and gam.grade == EXACT,
              gam.set_text())
    res.check("closure set = {0, 1/3, 1}", clo == points(0, Fraction(1, 3), 1), clo.to_text())
    res.check("both inclusions strict", inner.subset_of(gam.set) and gam.set.subset_of(clo)
              and inner != gam.set and gam.set != clo, "proper subsets")
    return res


CONSTRUCTIONS = {
    "z_sequence": lambda: z_sequence(ideal("Fin"), FIN_INITIAL_SEGMENTS,
                                     Stream(0, 1, Fraction(1, 2))),
    "z_sequence_fubini": lambda: z_sequence(ideal("FinxFin"), FINXFIN_P_WITNESS,
                                            Stream(0, 1, Fraction(1, 2))),
    "fubini": fubini_example,
    "closure_approximation": lambda: closure_approximation(
        _closure_demo(), ideal("Z"), Ball(RadiusFunction.constant(Fraction(3, 2))), Fraction(1, 2), 3),
    "p_plus_z": lambda: p_plus_counterexample(ideal("Z"), Stream(0, 1, Fraction(1, 2))),
    "p_plus_finxfin": lambda: p_plus_counterexample(ideal("FinxFin"), Stream(0, 1, Fraction(1, 2))),
    "non_uc": non_uc_counterexample,
    "cluster_family": lambda: cluster_family_instance(interval(0, 1), Fraction(1, 4)),
    "strict_inclusion": strict_inclusion_example,
}


def _closure_demo() -> Assignment:
    """``1 + 2^-n`` on even indices, ``0`` on odd ones."""
    return Assignment((Cell(AP(0, 2), Stream(1, 1, Fraction(1, 2), "n")),
                       Cell(AP(1, 2), const(0))), Fraction(0), label="closure-demo")


def run_construction(name: str) -> ConstructionResult:
    if name not in CONSTRUCTIONS:
        raise KeyError(f"unknown construction {name!r}; choose from {', '.join(CONSTRUCTIONS)}")
    return CONSTRUCTIONS[name]()
