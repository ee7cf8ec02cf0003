"""Command line interface.

    roughideal analyze SCENARIO      exact sets, expectations, optional report files
    roughideal oracle SCENARIO       as analyze, plus a grid comparison against the oracle
    roughideal verify NAME|all       run a named construction and print its claim checklist
    roughideal report DIR            tabulate saved JSON reports, with d_H between runs

Exit codes: 0 all checks pass, 1 a check failed or a discrepancy was found, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .constructions import CONSTRUCTIONS, run_construction
from .dsl import ParseError, Parser, Scenario, parse_scenario, print_seq
from .engine import (
    EXACT, compute_all, gamma_rough, inner_cluster_set, lambda_rough, lim_rough,
    lim_star_rough, m_functions, same_set,
)
from .exact_sets import fmt_num
from .oracle import OracleConfig, compare, grid_set
from .report import (
    RunRecord, dumps, margin_rows, margins_tsv, mcurve_tsv, record_json, summarize_dir,
    zero_crossings,
)
from .rough_families import Ball, Degenerate
from .sequences import EXACT as SEQ_EXACT, cluster_set

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
SET_FUNCS = {"lim": lim_rough, "limstar": lim_star_rough, "gamma": gamma_rough,
             "lambda": lambda_rough}


class UsageError(Exception):
    pass


# -- configuration -------------------------------------------------------------------------

def _parse_number(text: str) -> Fraction:
    try:
        p = Parser(text)
        v = p.number()
        p.end()
    except ParseError as e:
        raise UsageError(f"bad number {text!r}: {e.message}") from None
    return v


def _parse_range(text: str) -> tuple[Fraction, Fraction]:
    body = text.strip().strip("[]")
    parts = body.split(",")
    if len(parts) != 2:
        raise UsageError(f"--range expects LO,HI, got {text!r}")
    return _parse_number(parts[0]), _parse_number(parts[1])


def oracle_config(sc: Scenario, args: argparse.Namespace) -> OracleConfig:
    """Defaults, then the scenario's oracle block, then command line flags."""
    opts = dict(sc.oracle)
    if args.prefix is not None:
        opts["prefix"] = args.prefix
    if args.grid_step is not None:
        opts["grid_step"] = _parse_number(args.grid_step)
    if args.range is not None:
        opts["range"] = _parse_range(args.range)
    if args.theta is not None:
        opts["theta"] = _parse_number(args.theta)
    kw: dict = {}
    if "prefix" in opts:
        kw["prefix"] = int(opts["prefix"])
        kw["strict"] = kw["prefix"] >= 256
    if "grid_step" in opts:
        kw["grid_step"] = opts["grid_step"]
    if "range" in opts:
        kw["lo"], kw["hi"] = opts["range"]
    if "theta" in opts:
        kw["theta"] = float(opts["theta"])
    if "collar" in opts:
        kw["collar"] = opts["collar"]
    try:
        return OracleConfig(**kw)
    except ValueError as e:
        raise UsageError(str(e)) from None


def config_json(cfg: OracleConfig, seed: int) -> dict:
    return {"prefix": cfg.prefix, "grid_step": fmt_num(cfg.grid_step), "lo": fmt_num(cfg.lo),
            "hi": fmt_num(cfg.hi), "theta": repr(cfg.theta),
            "collar": fmt_num(cfg.collar_width), "seed": seed}


# -- running a scenario -----------------------------------------------------------------

def _wanted_sets(sc: Scenario) -> list[str]:
    names = [w for w in ("lim", "limstar", "gamma", "lambda") if sc.wants(w)]
    for w, _ in sc.expect:
        if w in SET_FUNCS and w not in names:
            names.append(w)
    return names


def _m_functions(sc: Scenario):
    if not isinstance(sc.family, Ball):
        return None
    try:
        return m_functions(sc.seq, sc.ideal, sc.family)
    except ValueError:
        return None


def run_scenario(sc: Scenario, cfg: OracleConfig, with_oracle: bool = False, seed: int = 0):
    """Engine (and optionally oracle) run.  Returns the record plus per-set margin rows."""
    x, I, F = sc.seq, sc.ideal, sc.family
    G = cluster_set(x, I)
    degenerate = isinstance(F, Degenerate)
    head = {
        "name": sc.name,
        "ideal": I.to_text(),
        "sequence": print_seq(x),
        "family": F.to_text(),
        "space": sc.space,
        "family_degenerate": degenerate,
        "tau_hat": F.tau_hat().status,
        "classical_gamma": G.set.to_text(),
        "classical_gamma_exact": G.exactness == SEQ_EXACT,
    }
    rec = RunRecord(head)
    names = _wanted_sets(sc)
    if set(names) >= set(SET_FUNCS):
        all4 = compute_all(x, I, F, cfg)
        rec.sets = {k: all4[k] for k in names}
    else:
        rec.sets = {k: SET_FUNCS[k](x, I, F, cfg) for k in names}
    if degenerate and "gamma" in rec.sets:
        rec.scenario["gamma_equals_classical"] = same_set(rec.sets["gamma"].set, G.set)
    if sc.wants("inner") or any(w == "inner" for w, _ in sc.expect):
        rec.extras["inner"] = inner_cluster_set(x, I, F)
    if sc.wants("closure") or any(w == "closure" for w, _ in sc.expect):
        rec.extras["closure"] = inner_cluster_set(x, I, F, closure=True)

    for which, expected in sc.expect:
        if which in rec.sets:
            r = rec.sets[which]
            ok = r.grade == EXACT and same_set(r.set, expected)
            actual = r.set_text()
        else:
            ok = same_set(rec.extras[which], expected)
            actual = rec.extras[which].to_text()
        rec.expectations.append((which, expected, actual, ok))

    mf = _m_functions(sc)
    if mf is not None and sc.wants("m"):
        crossings = zero_crossings(mf, cfg.grid())
        rec.scenario["m_tilde_zeros"] = [fmt_num(e) for e in crossings]

    rows: dict[str, list] = {}
    if with_oracle:
        rec.oracle_config = config_json(cfg, seed)
        if sc.space == "model" or I.kind == "FinxFin":
            rec.notes.append("oracle skipped: prefix estimation is unreliable for this ideal or "
                             "space; sets are certified symbolically")
        else:
            for which, r in rec.sets.items():
                if which == "limstar":
                    rec.notes.append("oracle has no estimator for limstar")
                    continue
                if r.grade != EXACT:
                    rec.notes.append(f"oracle skipped for {which}: engine grade {r.grade}")
                    continue
                grid = grid_set(x, I, F, which, cfg)
                rec.comparisons[which] = compare(r.set, grid, cfg)
                rows[which] = margin_rows(grid, r.set, mf)
    return rec, rows, mf


# -- output -----------------------------------------------------------------------------

def _print_record(rec: RunRecord, out=None):
    out = out or sys.stdout
    name = rec.scenario.get("name")
    if name:
        print(f"scenario {name}", file=out)
    for k in ("ideal", "sequence", "family", "tau_hat", "classical_gamma"):
        print(f"{k}: {rec.scenario[k]}", file=out)
    if rec.scenario.get("family_degenerate"):
        print("family is degenerate (F_eta = {eta})", file=out)
    for r in rec.sets.values():
        for line in r.lines():
            print(line, file=out)
    for k, S in rec.extras.items():
        print(f"{k}: {S.to_text()}", file=out)
    if "m_tilde_zeros" in rec.scenario:
        print(f"m_tilde zeros on grid: {', '.join(rec.scenario['m_tilde_zeros']) or 'none'}",
              file=out)
    for which, expected, actual, ok in rec.expectations:
        mark = "ok  " if ok else "FAIL"
        print(f"[{mark}] expect {which} = {expected.to_text()}  (got {actual})", file=out)
    for which, c in rec.comparisons.items():
        print(f"oracle {which}: " + "\n  ".join(c.lines()), file=out)
    for n in rec.notes:
        print(f"note: {n}", file=out)
    print(f"status: {'pass' if rec.passed else 'fail'}", file=out)


def _tsv_path(base: Path, which: str, n: int) -> Path:
    return base if n == 1 else base.with_name(f"{base.stem}.{which}{base.suffix or '.tsv'}")


def _write_outputs(args, rec: RunRecord, rows: dict, mf, cfg: OracleConfig):
    if args.json_out:
        path = Path(args.json_out)
        path.write_text(dumps(record_json(rec)), encoding="utf-8")
        if mf is not None:
            path.with_suffix(".mcurve.tsv").write_text(mcurve_tsv(mf, cfg.grid()),
                                                       encoding="utf-8")
    if args.tsv_out:
        base = Path(args.tsv_out)
        if rows:
            for which, rs in rows.items():
                _tsv_path(base, which, len(rows)).write_text(margins_tsv(rs), encoding="utf-8")
        elif mf is not None:
            base.write_text(mcurve_tsv(mf, cfg.grid()), encoding="utf-8")


def _load(path: str) -> Scenario:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    try:
        return parse_scenario(text)
    except ParseError as e:
        raise UsageError(f"{path}:{e.line}:{e.column}: {e.message}") from None


def cmd_analyze(args, with_oracle: bool = False) -> int:
    sc = _load(args.scenario)
    cfg = oracle_config(sc, args)
    seed = args.seed if args.seed is not None else dict(sc.oracle).get("seed", 0)
    rec, rows, mf = run_scenario(sc, cfg, with_oracle, seed)
    _print_record(rec)
    _write_outputs(args, rec, rows, mf, cfg)
    return EXIT_OK if rec.passed else EXIT_FAIL


def cmd_verify(args) -> int:
    names = list(CONSTRUCTIONS) if args.name == "all" else [args.name]
    if args.name != "all" and args.name not in CONSTRUCTIONS:
        raise UsageError(f"unknown construction {args.name!r}; choose from all, "
                         + ", ".join(CONSTRUCTIONS))
    results = [run_construction(n) for n in names]
    for r in results:
        for line in r.lines():
            print(line)
    if args.json_out:
        doc = {"constructions": [r.to_json() for r in results],
               "status": "pass" if all(r.passed for r in results) else "fail"}
        Path(args.json_out).write_text(dumps(doc), encoding="utf-8")
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


def cmd_report(args) -> int:
    d = Path(args.directory)
    if not d.is_dir():
        raise UsageError(f"{d} is not a directory")
    text = summarize_dir(d)
    if args.tsv_out:
        Path(args.tsv_out).write_text(text, encoding="utf-8")
    sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prefix", type=int, help="oracle prefix length N")
    common.add_argument("--grid-step", help="oracle grid step, a dyadic 2^-k such as 1/128")
    common.add_argument("--range", help="oracle grid range LO,HI (use --range=-4,4)")
    common.add_argument("--theta", help="oracle positivity threshold in (0,1)")
    common.add_argument("--seed", type=int, help="seed recorded in reports (default 0)")
    common.add_argument("--json-out", help="write the JSON report here")
    common.add_argument("--tsv-out", help="write the margin table (or summary) here")

    ap = argparse.ArgumentParser(prog="roughideal", description=__doc__.split("\n\n")[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)
    p = sub.add_parser("analyze", parents=[common], help="exact computation for a scenario")
    p.add_argument("scenario")
    p = sub.add_parser("oracle", parents=[common], help="engine plus oracle comparison")
    p.add_argument("scenario")
    p = sub.add_parser("verify", parents=[common], help="run a named construction")
    p.add_argument("name", help="construction name or 'all'")
    p = sub.add_parser("report", parents=[common], help="summarize saved JSON reports")
    p.add_argument("directory")
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        if args.command == "analyze":
            return cmd_analyze(args)
        if args.command == "oracle":
            return cmd_analyze(args, with_oracle=True)
        if args.command == "verify":
            return cmd_verify(args)
        return cmd_report(args)
    except UsageError as e:
        print(f"roughideal: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
