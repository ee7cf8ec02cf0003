"""Acceptance suite: one check per criterion, each reporting a single PASS/FAIL line.

Run under pytest (lines appear in the terminal summary) or directly with
``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import io
import math
import random
import sys
import time
from contextlib import redirect_stdout
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from roughideal.cli import main
from roughideal.constructions import closure_approximation, p_plus_counterexample, run_construction
from roughideal.distance import lambda_via_distance
from roughideal.dsl import ParseError, parse_scenario, print_scenario
from roughideal.engine import (
    EXACT, compute_all, gamma_rough, inner_cluster_set, lambda_rough, lim_rough, m_functions,
    same_set,
)
from roughideal.exact_sets import hausdorff_distance, interval, points
from roughideal.generators import (
    eventually_periodic, piecewise_constant_radius, random_ball_scenario, rational,
    stream_mixture,
)
from roughideal.ideals import FIN, FINXFIN, Z, ideal
from roughideal.oracle import (
    OracleConfig, approx_lambda_member, boundary_of, compare, grid_set, grid_sets,
)
from roughideal.piecewise import RadiusFunction, negative_example_radius
from roughideal.rough_families import (
    CERTIFIED, Ball, Degenerate, example21_family, f_prime_family,
)
from roughideal.sequences import Stream, VanDerCorput, alternating, constant, geometric

HERE = Path(__file__).parent
CORPUS = sorted((HERE.parent / "scenarios").glob("*.scn"))
RESULTS: dict[int, tuple[bool, str, float]] = {}


class Check:
    """Collects failures for one criterion and enforces its time budget."""

    def __init__(self, budget: float | None = None):
        self.failures: list[str] = []
        self.budget = budget
        self.t0 = time.perf_counter()

    def expect(self, ok: bool, what: str) -> None:
        if not ok:
            self.failures.append(what)

    def finish(self, number: int, summary: str) -> None:
        dt = time.perf_counter() - self.t0
        if self.budget is not None and dt >= self.budget:
            self.failures.append(f"runtime {dt:.1f}s exceeds {self.budget}s")
        ok = not self.failures
        detail = summary if ok else "; ".join(self.failures[:3])
        RESULTS[number] = (ok, detail, dt)
        assert ok, detail


def _eq(a, b) -> bool:
    return same_set(a, b)


# 1 --------------------------------------------------------------------------------------

def criterion_1():
    c = Check(budget=1.0)
    x, F = geometric(1, Fraction(1, 2)), example21_family()
    inner = inner_cluster_set(x, FIN, F)
    g = gamma_rough(x, FIN, F)
    clos = inner_cluster_set(x, FIN, F, closure=True)
    c.expect(inner == points(0), f"inner = {inner}")
    c.expect(g.grade == EXACT and g.set == points(0, 1), f"gamma = {g.set_text()}")
    c.expect(clos == points(0, Fraction(1, 3), 1), f"closure set = {clos}")
    c.finish(1, "inner {0}, Gamma {0,1}, closure set {0,1/3,1}")


# 2 --------------------------------------------------------------------------------------

def criterion_2():
    c = Check(budget=1.0)
    g = gamma_rough(alternating(), FIN, Ball(RadiusFunction.constant(3), closed=False))
    c.expect(g.grade == EXACT and g.set == interval(-4, 4, False, False), f"open ball: {g.set_text()}")
    g2 = gamma_rough(alternating(), FIN, f_prime_family())
    c.expect(g2.grade == EXACT and g2.set == interval(-2, 2, False, False), f"F': {g2.set_text()}")
    c.finish(2, "Gamma = (-4,4) and (-2,2), open endpoints")


# 3 --------------------------------------------------------------------------------------

def criterion_3():
    c = Check(budget=1.0)
    F = Ball(negative_example_radius())
    c.expect(gamma_rough(constant(0), FIN, F).set == points(0), "Phi(0) != {0}")
    c.expect(lim_rough(constant(0), FIN, F).set == points(0), "Psi(0) != {0}")
    for t in range(1, 11):
        eps = Fraction(1, 2**t)
        y = constant(eps / 2)
        eta = 2 / eps
        phi, psi = gamma_rough(y, FIN, F), lim_rough(y, FIN, F)
        c.expect(phi.grade == EXACT and phi.set.contains(eta), f"t={t}: eta not in Phi")
        c.expect(psi.grade == EXACT and psi.set.contains(eta), f"t={t}: eta not in Psi")
        c.expect(m_functions(y, FIN, F).m_tilde(eta) == 0, f"t={t}: m_tilde != 0")
        c.expect(not interval(-1, 1, False, False).contains(eta), f"t={t}: eta inside (-1,1)")
    c.finish(3, "Phi(0) = Psi(0) = {0}; 2/eps in both with m_tilde = 0 for t = 1..10")


# 4 --------------------------------------------------------------------------------------

def criterion_4():
    c = Check(budget=5.0)
    out = io.StringIO()
    with redirect_stdout(out):
        code = main(["verify", "fubini"])
    r = run_construction("fubini")
    c.expect(code == 0, f"verify exit {code}")
    c.expect(r.passed, "construction failed")
    c.expect(all(cl.method == "symbolic" for cl in r.claims), "non-symbolic certificate")
    for claim in ("Lim* = {}", "Lim = X", "Lambda = X", "Gamma = X"):
        c.expect(any(claim in cl.text and cl.verdict for cl in r.claims), f"missing {claim}")
    c.finish(4, "Lim* = {}, Lim = Gamma = Lambda = X, all certificates symbolic")


# 5 --------------------------------------------------------------------------------------

def criterion_5():
    c = Check(budget=30.0)
    y = Stream(0, 1, Fraction(1, 2))
    for I in (Z, FINXFIN):
        r = p_plus_counterexample(I, y)
        c.expect(r.passed, f"p_plus {I.kind} failed")
        c.expect(any("in Gamma" in cl.text and cl.verdict for cl in r.claims), f"{I.kind}: Gamma")
        c.expect(any("not in Lambda" in cl.text and cl.verdict for cl in r.claims),
                 f"{I.kind}: Lambda")
    for seed in range(50):
        rng = random.Random(seed)
        x = eventually_periodic(rng, lo=0, hi=1)
        F = Ball(piecewise_constant_radius(rng), closed=rng.random() < 0.7)
        lam, g = lambda_rough(x, FIN, F), gamma_rough(x, FIN, F)
        c.expect(lam.grade == EXACT and g.grade == EXACT and _eq(lam.set, g.set),
                 f"seed {seed}: Lambda {lam.set_text()} vs Gamma {g.set_text()}")
    c.finish(5, "eta in Gamma \\ Lambda for Z and FinxFin; Fin Lambda = Gamma on 50 scenarios")


# 6 --------------------------------------------------------------------------------------

def criterion_6():
    c = Check(budget=60.0)
    cfg = OracleConfig(prefix=10_000, grid_step=Fraction(1, 128), collar=Fraction(1, 64))
    compared = genuine = 0
    for i in range(100):
        rng = random.Random(1000 + i)
        x, F = random_ball_scenario(rng)
        I = ideal(rng.choice(["Fin", "Z"]))
        grids = grid_sets(x, I, F, ("gamma", "lim", "lambda"), cfg)
        for which, fn in (("gamma", gamma_rough), ("lim", lim_rough), ("lambda", lambda_rough)):
            r = fn(x, I, F, cfg)
            c.expect(r.grade == EXACT, f"#{i} {which} graded {r.grade}")
            cmp = compare(r.set, grids[which], cfg)
            compared += 1
            bad = [d for d in cmp.discrepancies if d.cause == "genuine"]
            genuine += len(bad)
            c.expect(cmp.passed, f"#{i} {which}: {len(cmp.discrepancies)} discrepancies")
    c.expect(genuine == 0, f"{genuine} genuine discrepancies")
    c.finish(6, f"{compared} comparisons (Gamma, Lim, Lambda) pass; 0 genuine discrepancies")


# 7 --------------------------------------------------------------------------------------

def _chain_violations(x, I, F) -> list[str]:
    rep = compute_all(x, I, F)
    ls, lam, lim, g = rep["limstar"], rep["lambda"], rep["lim"], rep["gamma"]
    bad = []
    for name, a, b in (("Lim* in Lambda", ls, lam), ("Lambda in Gamma", lam, g),
                       ("Lim* in Lim", ls, lim), ("Lim in Gamma", lim, g)):
        if not a.inner.subset_of(b.outer):
            bad.append(name)
    lower = inner_cluster_set(x, I, F)
    if not lower.subset_of(g.outer):
        bad.append("first inclusion")
    if getattr(x, "bounded", True) and getattr(x, "space", "real") == "real":
        upper = inner_cluster_set(x, I, F, closure=True)
        if not g.inner.subset_of(upper):
            bad.append("sandwich upper bound")
    if F.all_closed and F.tau_hat().status == CERTIFIED and g.grade == EXACT:
        if not g.set.is_closed():
            bad.append("closedness")
    return bad


def criterion_7():
    c = Check()
    n = 0
    for path in CORPUS:
        sc = parse_scenario(path.read_text(encoding="utf-8"))
        for msg in _chain_violations(sc.seq, sc.ideal, sc.family):
            c.expect(False, f"{path.stem}: {msg}")
        n += 1
    for seed in range(40):
        rng = random.Random(seed)
        x = stream_mixture(rng) if seed % 2 else random_ball_scenario(rng)[0]
        F = Ball(piecewise_constant_radius(rng), closed=rng.random() < 0.7)
        for I in (FIN, Z):
            for msg in _chain_violations(x, I, F):
                c.expect(False, f"generated #{seed} {I.kind}: {msg}")
            n += 1
    c.finish(7, f"chains, sandwich, first inclusion, closedness hold on {n} scenarios (0 violations)")


# 8 --------------------------------------------------------------------------------------

def criterion_8():
    c = Check(budget=30.0)
    cfg = OracleConfig(prefix=10_000, grid_step=Fraction(1, 128), collar=Fraction(1, 64))
    agree = skipped = 0
    for i in range(100):
        rng = random.Random(5000 + i)
        x = stream_mixture(rng) if i % 2 else eventually_periodic(rng)
        I = ideal(rng.choice(["Fin", "Z"]))
        F = Ball(RadiusFunction.constant(rational(rng, Fraction(0), Fraction(1), (2, 4, 8))))
        eta = rational(rng, Fraction(-3), Fraction(3), (4, 8, 16))
        v = lambda_via_distance(x, eta, F, I)
        bd = boundary_of(lambda_rough(x, I, F).set)
        if not bd.is_empty() and bd.distance(eta) <= cfg.collar_width:
            skipped += 1
            continue
        o = approx_lambda_member(x, I, F, eta, cfg)
        c.expect(v.member == o.member, f"#{i} eta={eta}: distance {v.member}, oracle {o.member}")
        agree += v.member == o.member
    c.finish(8, f"{agree}/{100 - skipped} agree outside the collar ({skipped} in collar)")


# 9 --------------------------------------------------------------------------------------

def criterion_9():
    c = Check()
    scenarios = 0
    seed = 0
    while scenarios < 20 and seed < 500:
        rng = random.Random(seed)
        seed += 1
        y = stream_mixture(rng)
        I = ideal(rng.choice(["Fin", "Z"]))
        F = Ball(RadiusFunction.constant(Fraction(rng.randint(1, 8), 4)))
        L = lim_rough(y, I, F).set
        if L.is_empty():
            continue
        if L.points:
            eta = L.points[0]
        else:
            iv = L.intervals[0]
            eta = iv.lo if rng.random() < 0.5 else (iv.lo + iv.hi) / 2
        scenarios += 1
        for k in range(21):
            r = closure_approximation(y, I, F, eta, k)
            c.expect(r.passed, f"seed {seed - 1} k={k}: " + "; ".join(
                cl.text for cl in r.claims if not cl.verdict))
            c.expect(r.values["sup"] < Fraction(1, 2**k), f"seed {seed - 1} k={k}: sup bound")
    c.expect(scenarios == 20, f"only {scenarios} scenarios")
    c.finish(9, f"{scenarios} scenarios x k = 0..20: sup < 2^-k and S in I certified")


# 10 -------------------------------------------------------------------------------------

def _sup_distance(x, y) -> Fraction:
    """Exact sup norm of two eventually periodic sequences: prefix plus one joint period."""
    def shape(s):
        T = sum(1 for cell in s.cells if cell.index.to_text().startswith("fin"))
        return T, len(s.cells) - T
    (tx, px), (ty, py) = shape(x), shape(y)
    n = max(tx, ty) + math.lcm(max(px, 1), max(py, 1))
    return max(abs(a - b) for a, b in zip(x.prefix(n), y.prefix(n)))


def criterion_10():
    c = Check()
    worst = Fraction(0)
    for seed in range(100):
        rng = random.Random(seed)
        x, y = eventually_periodic(rng), eventually_periodic(rng)
        gx, gy = gamma_rough(x, FIN, Degenerate()), gamma_rough(y, FIN, Degenerate())
        c.expect(gx.grade == EXACT and gy.grade == EXACT, f"seed {seed}: Gamma not exact")
        d, s = hausdorff_distance(gx.set, gy.set), _sup_distance(x, y)
        c.expect(d <= s, f"seed {seed}: d_H {d} > sup {s}")
        if s:
            worst = max(worst, Fraction(d) / s)
    c.finish(10, f"100 pairs, 0 violations (max d_H / sup = {float(worst):.3f})")


# 11 -------------------------------------------------------------------------------------

def criterion_11():
    c = Check()
    N = 2**16
    v = VanDerCorput().prefix_float(N)
    rng = random.Random(11)
    worst = 0.0
    for _ in range(50):
        k = rng.randint(1, 8)
        a, b = sorted(rng.sample(range(2**k + 1), 2))
        lo, hi = a / 2**k, b / 2**k
        dens = float(np.mean((v >= lo) & (v <= hi)))
        worst = max(worst, abs(dens - (hi - lo)))
    c.expect(worst <= 0.02, f"density error {worst}")
    F = Ball(RadiusFunction.constant(Fraction(1, 10)))
    lam = lambda_rough(VanDerCorput(), Z, F)
    cfg = OracleConfig(prefix=N, grid_step=Fraction(1, 32), lo=Fraction(0), hi=Fraction(1))
    grid = grid_set(VanDerCorput(), Z, F, "lambda", cfg)
    for gp in grid:
        c.expect(gp.member and lam.set.contains(gp.eta), f"eta={gp.eta} not confirmed")
    c.finish(11, f"50 dyadic intervals within {worst:.4f}; {len(grid)} grid points in Lambda")


# 12 -------------------------------------------------------------------------------------

def criterion_12():
    c = Check()
    r = run_construction("non_uc")
    for key in ("0 in Lambda_z(Fin)", "1 not in Lambda_x(Fin, F)", "d(A,B) = 0"):
        c.expect(any(key in cl.text and cl.verdict and cl.method == "symbolic"
                     for cl in r.claims), f"check '{key}' not certified exactly")
    c.expect(r.passed, "construction failed")
    c.finish(12, "distance sequence -> 0, Lambda refuted via U = R \\ B, d(A,B) = 0")


# 13 -------------------------------------------------------------------------------------

def criterion_13(tmp: Path):
    sys.path.insert(0, str(HERE))
    from test_dsl import MALFORMED

    c = Check()
    for path in CORPUS:
        sc = parse_scenario(path.read_text(encoding="utf-8"))
        text = print_scenario(sc)
        again = parse_scenario(text)
        c.expect(again == sc and print_scenario(again) == text, f"{path.stem}: not a fixpoint")
    for text in MALFORMED:
        try:
            parse_scenario(text)
            c.expect(False, f"accepted {text!r}")
        except ParseError as e:
            c.expect(e.line >= 1 and e.column >= 1, f"unpositioned error for {text!r}")
    outs = []
    for run in range(2):
        out = tmp / f"run{run}.json"
        with redirect_stdout(io.StringIO()):
            main(["oracle", str(HERE.parent / "scenarios" / "alternating_open_ball.scn"),
                  "--seed", "7", "--prefix", "2048", "--json-out", str(out)])
        outs.append(out.read_bytes())
    c.expect(outs[0] == outs[1], "report bytes differ")
    c.finish(13, f"{len(CORPUS)} corpus fixpoints, {len(MALFORMED)} positioned errors, "
                 "identical report bytes")


CRITERIA = {1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
            6: criterion_6, 7: criterion_7, 8: criterion_8, 9: criterion_9, 10: criterion_10,
            11: criterion_11, 12: criterion_12}


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    CRITERIA[number]()


def test_criterion_13(tmp_path):
    criterion_13(tmp_path)


def result_lines() -> list[str]:
    return [f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  ({dt:.1f}s)  {detail}"
            for n, (ok, detail, dt) in sorted(RESULTS.items())]


if __name__ == "__main__":
    import tempfile

    with tempfile.TemporaryDirectory() as d:
        for n, fn in [*CRITERIA.items(), (13, lambda: criterion_13(Path(d)))]:
            try:
                fn()
            except AssertionError:
                pass
            print(result_lines()[-1] if n in RESULTS else f"criterion {n:2d}: FAIL")
    sys.exit(0 if all(ok for ok, _, _ in RESULTS.values()) else 1)
