"""Report emission: JSON documents, per-eta margin tables and m-curve plot data.

Field order is fixed by construction (dicts are built in a set order and dumped without
key sorting), rationals are written as ``"p/q"`` strings and sets in their canonical
text form, so two runs of the same scenario produce byte-identical files.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .exact_sets import RealSet, fmt_num, hausdorff_distance
from .oracle import Comparison, GridPoint


def num_text(v) -> str:
    if isinstance(v, float):
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return f"{v:.10g}"
    return fmt_num(v)


@dataclass
class MarginRow:
    eta: Fraction
    m: Fraction | None
    m_tilde: Fraction | None
    engine: bool
    oracle: bool
    margin: float


@dataclass
class RunRecord:
    """Everything one scenario run produced, in emission order."""

    scenario: dict
    sets: dict = field(default_factory=dict)  # name -> SetReport
    extras: dict = field(default_factory=dict)  # name -> RealSet
    expectations: list = field(default_factory=list)  # (name, expected, actual, ok)
    comparisons: dict = field(default_factory=dict)  # name -> Comparison
    oracle_config: dict | None = None
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (all(ok for *_, ok in self.expectations)
                and all(c.passed for c in self.comparisons.values()))


def comparison_json(c: Comparison) -> dict:
    return {
        "passed": c.passed,
        "d_H": num_text(c.d_H),
        "discrepancies": [
            {"eta": fmt_num(d.eta), "engine": d.engine, "oracle": d.oracle,
             "margin": num_text(d.margin), "cause": d.cause}
            for d in c.discrepancies],
    }


def record_json(rec: RunRecord) -> dict:
    out = dict(rec.scenario)
    out["sets"] = {k: r.to_json() for k, r in rec.sets.items()}
    out["derived"] = {k: S.to_text() for k, S in rec.extras.items()}
    out["expectations"] = [
        {"set": k, "expected": e.to_text(), "actual": a, "pass": ok}
        for k, e, a, ok in rec.expectations]
    if rec.oracle_config is not None:
        out["oracle"] = {"config": rec.oracle_config,
                         "comparisons": {k: comparison_json(c) for k, c in rec.comparisons.items()}}
    out["notes"] = list(rec.notes)
    out["status"] = "pass" if rec.passed else "fail"
    return out


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def margin_rows(grid: list[GridPoint], engine: RealSet, mf=None) -> list[MarginRow]:
    rows = []
    for g in grid:
        m = mt = None
        if mf is not None:
            m, mt = mf.m(g.eta), mf.m_tilde(g.eta)
        rows.append(MarginRow(g.eta, m, mt, engine.contains(g.eta), g.member, g.margin))
    return rows


def margins_tsv(rows: list[MarginRow]) -> str:
    lines = ["eta\tm\tm_tilde\tengine\toracle\tmargin"]
    for r in rows:
        m = "" if r.m is None else num_text(r.m)
        mt = "" if r.m_tilde is None else num_text(r.m_tilde)
        lines.append(f"{fmt_num(r.eta)}\t{m}\t{mt}\t{int(r.engine)}\t{int(r.oracle)}\t"
                     f"{num_text(r.margin)}")
    return "\n".join(lines) + "\n"


def mcurve_tsv(mf, etas) -> str:
    """Plot data for ``m`` and ``m~``: exact values plus float columns for plotting."""
    lines = ["eta\tm\tm_tilde\tm_float\tm_tilde_float"]
    for e in etas:
        m, mt = mf.m(e), mf.m_tilde(e)
        lines.append(f"{fmt_num(e)}\t{fmt_num(m)}\t{fmt_num(mt)}\t{float(m):.10g}\t{float(mt):.10g}")
    return "\n".join(lines) + "\n"


def zero_crossings(mf, etas, which: str = "m_tilde") -> list[Fraction]:
    """Grid points where the chosen curve vanishes or changes sign."""
    f = mf.m_tilde if which == "m_tilde" else mf.m
    vals = [(e, f(e)) for e in etas]
    out = []
    for i, (e, v) in enumerate(vals):
        if v == 0:
            out.append(e)
        elif i and vals[i - 1][1] != 0 and (vals[i - 1][1] < 0) != (v < 0):
            out.append(e)
    return out


# -- directory summaries ------------------------------------------------------------------

def _set_of(entry: dict) -> RealSet | None:
    from .dsl import ParseError, parse_set

    text = entry.get("set", entry.get("inner"))
    if text is None:
        return None
    try:
        return parse_set(text)
    except ParseError:
        return None


def summarize_dir(path: Path) -> str:
    """Tabulate every report in ``path``; ``d_H`` compares each set with the previous run."""
    files = sorted(Path(path).glob("*.json"))
    lines = ["file\tscenario\tset\tvalue\tgrade\tstatus\td_H"]
    prev: dict[str, RealSet | None] = {}
    for f in files:
        doc = json.loads(f.read_text(encoding="utf-8"))
        if "sets" not in doc:
            continue
        for name, entry in doc["sets"].items():
            S = _set_of(entry)
            dh = ""
            if name in prev and prev[name] is not None and S is not None:
                P = prev[name]
                if P.is_empty() and S.is_empty():
                    dh = "0"
                elif P.is_empty() or S.is_empty():
                    dh = "inf"
                else:
                    dh = num_text(hausdorff_distance(P, S))
            prev[name] = S
            lines.append("\t".join([f.name, str(doc.get("name") or ""), name,
                                    entry.get("set", entry.get("inner", "")),
                                    entry.get("grade", ""),
                                    doc.get("status", ""), dh]))
    return "\n".join(lines) + "\n"
