import json
from pathlib import Path

import pytest

from roughideal.cli import main

ROOT = Path(__file__).parent.parent
SCN = ROOT / "scenarios"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_example21_report(capsys, tmp_path):
    js = tmp_path / "r.json"
    code, out, _ = run(capsys, "analyze", SCN / "example21.scn", "--json-out", js)
    assert code == 0
    doc = json.loads(js.read_text(encoding="utf-8"))
    assert doc["derived"]["inner"] == "{0}"
    assert doc["sets"]["gamma"]["set"] == "{0, 1}"
    assert doc["derived"]["closure"] == "{0, 1/3, 1}"
    assert doc["status"] == "pass"


def test_verify_fubini_checklist(capsys):
    code, out, _ = run(capsys, "verify", "fubini")
    assert code == 0
    claims = [l for l in out.splitlines() if l.strip().startswith("[ok]")]
    for label in ("Lim* = {}", "Lim = X", "Lambda = X", "Gamma = X"):
        assert any(label in l for l in claims)
    assert "[FAIL]" not in out


def test_verify_unknown_is_usage_error(capsys):
    code, _, err = run(capsys, "verify", "nonesuch")
    assert code == 2 and "unknown construction" in err


def test_tiny_prefix_oracle_flags_estimator_discrepancies(capsys):
    code, out, _ = run(capsys, "oracle", SCN / "tiny_prefix.scn")
    assert code == 1
    assert "cause=estimator" in out
    assert "cause=genuine" not in out


def test_prefix_flag_overrides_scenario(capsys):
    code, out, _ = run(capsys, "oracle", SCN / "tiny_prefix.scn", "--prefix", 4096)
    assert code == 0


def test_negative_example_m_tilde_zero_at_four(capsys, tmp_path):
    js = tmp_path / "neg.json"
    code, out, _ = run(capsys, "analyze", SCN / "negative_quarter.scn", "--json-out", js)
    assert code == 0
    doc = json.loads(js.read_text(encoding="utf-8"))
    assert "4" in doc["m_tilde_zeros"]
    curve = (tmp_path / "neg.mcurve.tsv").read_text(encoding="utf-8").splitlines()
    row = [l.split("\t") for l in curve if l.startswith("4\t")][0]
    assert row[2] == "0"


def test_degenerate_family_marked(capsys, tmp_path):
    js = tmp_path / "d.json"
    run(capsys, "analyze", SCN / "geo_degenerate.scn", "--json-out", js)
    doc = json.loads(js.read_text(encoding="utf-8"))
    assert doc["family_degenerate"] is True
    assert doc["gamma_equals_classical"] is True


def test_margin_tsv_columns(capsys, tmp_path):
    tsv = tmp_path / "m.tsv"
    code, _, _ = run(capsys, "oracle", SCN / "alternating_open_ball.scn", "--tsv-out", tsv)
    assert code == 0
    for which in ("gamma", "lim"):
        head = (tmp_path / f"m.{which}.tsv").read_text(encoding="utf-8").splitlines()[0]
        assert head.split("\t") == ["eta", "m", "m_tilde", "engine", "oracle", "margin"]


def test_report_bytes_identical(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        run(capsys, "oracle", SCN / "periodic_z.scn", "--seed", 7, "--json-out", p)
    assert a.read_bytes() == b.read_bytes()


def test_report_dir_has_hausdorff_column(capsys, tmp_path):
    run(capsys, "analyze", SCN / "alternating_open_ball.scn", "--json-out", tmp_path / "1.json")
    run(capsys, "analyze", SCN / "alternating_region.scn", "--json-out", tmp_path / "2.json")
    code, out, _ = run(capsys, "report", tmp_path)
    assert code == 0
    lines = [l.split("\t") for l in out.splitlines()]
    assert lines[0][-1] == "d_H"
    # gamma: (-4,4) then (-2,2)
    gamma_rows = [l for l in lines[1:] if l[2] == "gamma"]
    assert gamma_rows[1][-1] == "2"


def test_parse_error_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.scn"
    bad.write_text("seq alt;", encoding="utf-8")
    code, _, err = run(capsys, "analyze", bad)
    assert code == 2
    assert "bad.scn:1:1: expected 'ideal'" in err


def test_failed_expectation_exit_code(capsys, tmp_path):
    f = tmp_path / "x.scn"
    f.write_text("ideal Fin; seq alt; family degenerate; compute gamma; expect gamma = {1}",
                 encoding="utf-8")
    code, out, _ = run(capsys, "analyze", f)
    assert code == 1 and "[FAIL]" in out


def test_bad_flag_values_are_usage_errors(capsys):
    assert run(capsys, "oracle", SCN / "periodic_z.scn", "--grid-step", "1/3")[0] == 2
    assert run(capsys, "oracle", SCN / "periodic_z.scn", "--range=2,1")[0] == 2
    assert run(capsys, "oracle", SCN / "periodic_z.scn", "--theta", "abc")[0] == 2
    assert run(capsys, "nonsense")[0] == 2


@pytest.mark.parametrize("path", sorted(SCN.glob("*.scn")), ids=lambda p: p.stem)
def test_corpus_exit_codes(capsys, path):
    code, _, _ = run(capsys, "analyze", path)
    assert code == 0
