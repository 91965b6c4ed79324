from __future__ import annotations

import json
import math

import pytest

from trapcc import cli
from trapcc import families as fam
from trapcc.plotting import render_svg
from trapcc.tracefile import COLUMNS, MalformedTrace, read_rows, rows_to_csv, trace_rows, write_rows


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_eval_square_json(capsys):
    code, out, _ = run(capsys, "eval", "--a", "1", "--b", "1", "--c", "0", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["status"] == "ok" and doc["class"] == "Square"
    assert abs(doc["D"]) <= 1e-12
    assert all(abs(v - 1) <= 1e-12 for v in doc["masses"].values())


def test_eval_off_surface_reports_formulas(capsys):
    code, out, _ = run(capsys, "eval", "--a", "1.1547", "--b", "0.57735", "--c", "0")
    assert code == 0
    assert "NotOnSurface" in out and "formulas" in out


def test_eval_invalid_config_exit_2(capsys):
    code, _, err = run(capsys, "eval", "--a", "0.5", "--b", "1", "--c", "0")
    assert code == 2 and "a must be >= 1" in err


@pytest.mark.parametrize("family", cli.FAMILIES)
def test_trace_every_family_writes_csv(tmp_path, capsys, family):
    out = tmp_path / f"{family}.csv"
    extra = [] if family in ("m2m3", "m2eq1") else ["--n", "12"]
    code, _, _ = run(capsys, "trace", "--family", family, "--out", str(out), *extra)
    assert code == 0
    rows = read_rows(out)
    assert len(rows) >= 2
    assert list(rows[0]) == list(COLUMNS)


def test_trace_negative_range_without_equals(capsys):
    code, out, _ = run(capsys, "trace", "--family", "c2", "--range", "-0.5773,0", "--n", "5")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].split(",") == list(COLUMNS) and len(lines) == 6
    assert float(lines[1].split(",")[3]) == pytest.approx(-0.5773)


def test_trace_json_format(tmp_path, capsys):
    out = tmp_path / "c1.json"
    code, _, _ = run(capsys, "trace", "--family", "c1", "--n", "4", "--format", "json", "--out", str(out))
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["columns"] == list(COLUMNS) and len(doc["rows"]) == 4
    assert len(read_rows(out)) == 4


def test_trace_failure_writes_partial(tmp_path, capsys, monkeypatch):
    run_ = fam._PlaneContinuation.run
    monkeypatch.setattr(fam._PlaneContinuation, "run", lambda self, x: run_(self, x)[:6])
    out = tmp_path / "p.csv"
    code, _, err = run(capsys, "trace", "--family", "m2m3", "--out", str(out))
    assert code == 1 and err
    assert len(read_rows(out)) == 6


def test_csv_round_trip_is_exact(tmp_path):
    rows = trace_rows(fam.trace_c1(7))
    path = tmp_path / "t.csv"
    write_rows(path, rows)
    back = read_rows(path)
    for r, b in zip(rows, back):
        for k in COLUMNS[:-1]:
            assert (math.isnan(r[k]) and math.isnan(b[k])) or r[k] == b[k]
        assert r["class"] == b["class"]
    assert rows_to_csv(back) == path.read_text()


def test_malformed_traces(tmp_path, capsys):
    empty = tmp_path / "e.csv"
    empty.write_text("")
    with pytest.raises(MalformedTrace):
        read_rows(empty)
    bad = tmp_path / "b.csv"
    bad.write_text("x,y\n1,2\n")
    code, _, err = run(capsys, "plot", str(bad), "--out", str(tmp_path / "b.svg"))
    assert code == 1 and "header" in err
    header_only = tmp_path / "h.csv"
    header_only.write_text(",".join(COLUMNS) + "\n")
    assert read_rows(header_only) == []


def test_plot_is_deterministic(tmp_path, capsys):
    src = tmp_path / "r.csv"
    write_rows(src, trace_rows(fam.trace_right(30)))
    for kind in ("masses", "projection"):
        a, b = tmp_path / f"{kind}1.svg", tmp_path / f"{kind}2.svg"
        assert run(capsys, "plot", str(src), "--kind", kind, "--out", str(a))[0] == 0
        assert run(capsys, "plot", str(src), "--kind", kind, "--out", str(b))[0] == 0
        assert a.read_bytes() == b.read_bytes()
        assert a.read_text().lstrip().startswith("<?xml")


def test_plot_header_only_trace(tmp_path, capsys):
    src = tmp_path / "h.csv"
    src.write_text(",".join(COLUMNS) + "\n")
    code, _, _ = run(capsys, "plot", str(src), "--out", str(tmp_path / "h.svg"))
    assert code == 0 and "<svg" in (tmp_path / "h.svg").read_text()
    with pytest.raises(ValueError):
        render_svg([], "pie")


def test_verify_only_and_seed(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        code, out, _ = run(capsys, "verify", "--only", "lemma-biggest-side", "mass-ordering",
                           "--seed", "42", "--samples", "300", "--out", str(p))
        assert code == 0 and "PASS" in out
    assert a.read_bytes() == b.read_bytes()
    assert [d["claim_id"] for d in json.loads(a.read_text())] == ["lemma-biggest-side", "mass-ordering"]


def test_verify_unknown_claim(capsys):
    code, _, err = run(capsys, "verify", "--only", "nope")
    assert code == 2 and "unknown claim" in err


def test_verify_zero_samples_skips(capsys):
    code, out, _ = run(capsys, "verify", "--only", "mu2-maximum", "--samples", "0")
    assert code == 0 and "SKIPPED" in out


def test_config_file(tmp_path, capsys):
    cfgf = tmp_path / "run.cfg"
    cfgf.write_text("# settings\nseed = 7\nsamples = 200  # small\nformat = json\n")
    code, out, _ = run(capsys, "--config", str(cfgf), "verify", "--only", "mass-ordering")
    assert code == 0
    assert json.loads(out[out.index("["):])[0]["seed"] == 7
    code, out, _ = run(capsys, "--config", str(cfgf), "trace", "--family", "c3", "--n", "3")
    assert json.loads(out)["columns"] == list(COLUMNS)


@pytest.mark.parametrize("text", ["bogus = 1\n", "grid_b = 1\n", "tol_root = -1\n", "format = xml\n"])
def test_bad_config_rejected(tmp_path, capsys, text):
    cfgf = tmp_path / "bad.cfg"
    cfgf.write_text(text)
    code, _, err = run(capsys, "--config", str(cfgf), "roots", "--target", "m2eq1-on-c1")
    assert code == 2 and "bad config" in err


def test_roots_json(capsys):
    code, out, _ = run(capsys, "roots", "--target", "m2m3-on-c1", "--json")
    doc = json.loads(out)
    assert code == 0
    assert doc["degree"] == 24 and doc["sturm_count"] == 2 and doc["admissible_count"] == 1
    assert doc["roots_c"] == pytest.approx([-0.351839354], abs=1e-8)


def test_roots_text_marks_spurious(capsys):
    code, out, _ = run(capsys, "roots", "--target", "m2m3-on-c1")
    assert code == 0 and "spurious" in out and "admissible roots   1" in out


def test_trace_bad_range(capsys):
    code, _, err = run(capsys, "trace", "--family", "c1", "--range", "0.1")
    assert code == 1 and "LO,HI" in err


def test_trace_out_of_range_parameter(capsys):
    code, _, err = run(capsys, "trace", "--family", "c1", "--range=-0.9,0", "--n", "3")
    assert code == 1 and "C1 needs" in err
