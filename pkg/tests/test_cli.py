"""Command-line workflows: generation, verification runs, convergence tables."""
import json
import math

import pytest

from unravel.cli import (
    ALL_BOUNDS,
    RunConfig,
    _threads_default,
    cmd_converge,
    cmd_cover,
    cmd_verify,
    main,
)
from unravel.generate import complete_graph, cycle_graph, petersen


def gen(tmp_path, *args) -> None:
    assert main(["gen", *args, "--out", str(tmp_path)]) == 0


def make_corpus(tmp_path):
    corpus = tmp_path / "corpus"
    gen(corpus, "cycle", "--n", "20")
    gen(corpus, "random-regular", "--d", "3", "--n", "20", "--seed", "1")
    return corpus


def read_rows(outdir):
    with open(outdir / "reports.json", encoding="utf-8") as f:
        payload = json.load(f)
    assert payload["schema_version"] == 1
    return payload["reports"]


def read_summary(outdir):
    with open(outdir / "summary.json", encoding="utf-8") as f:
        return json.load(f)


# ---------------------------------------------------------------------------
# gen


def test_gen_cycle_writes_one_line_per_edge(tmp_path):
    gen(tmp_path, "cycle", "--n", "50")
    path = tmp_path / "cycle-n50-s0.edges"
    edge_lines = [l for l in path.read_text().splitlines() if l and not l.startswith("#")]
    assert len(edge_lines) == 50
    meta = json.loads((tmp_path / "cycle-n50-s0.meta.json").read_text())
    assert meta["vertices"] == 50 and meta["edges"] == 50


def test_gen_named_graph(tmp_path):
    gen(tmp_path, "petersen")
    lines = [l for l in (tmp_path / "petersen.edges").read_text().splitlines() if not l.startswith("#")]
    assert len(lines) == 15


def test_gen_is_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for d in (a, b):
        gen(d, "random-regular", "--d", "3", "--n", "40", "--seed", "7")
    name = "random_regular-d3-n40-s7.edges"
    assert (a / name).read_bytes() == (b / name).read_bytes()


def test_gen_rejects_bad_requests(tmp_path, capsys):
    assert main(["gen", "klein-bottle", "--out", str(tmp_path)]) == 2
    assert main(["gen", "cycle", "--out", str(tmp_path)]) == 2  # --n missing
    assert "error:" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# verify


def test_verify_writes_sorted_reports(tmp_path):
    corpus = make_corpus(tmp_path)
    out = tmp_path / "out"
    assert main(["verify", "--corpus", str(corpus), "--r", "1,2", "--out", str(out)]) == 0
    rows = read_rows(out)
    assert rows  # two graphs, two radii, seven rows each
    keys = [(row["graph_id"], row["bound"], row["r"]) for row in rows]
    assert keys == sorted(keys)
    assert all(row["runtime_ms"] is None for row in rows)
    assert {row["bound"] for row in rows} == set(ALL_BOUNDS)

    summary = read_summary(out)
    assert summary["schema_version"] == 1
    assert summary["violations"] == 0
    assert set(summary["totals"]) == set(ALL_BOUNDS)
    assert summary["config"]["r_values"] == [1, 2]
    assert summary["wall_time_s"] > 0

    header = (out / "reports.csv").read_text().splitlines()[0]
    assert header == "graph_id,bound,r,lhs,rhs,slack,witness,hypothesis_ok,pass,tol,runtime_ms"


def test_verify_is_byte_deterministic_across_thread_counts(tmp_path, monkeypatch):
    corpus = make_corpus(tmp_path)
    serial, parallel = tmp_path / "serial", tmp_path / "parallel"
    monkeypatch.delenv("UNRAVEL_THREADS", raising=False)
    assert main(["verify", "--corpus", str(corpus), "--r", "1,2", "--threads", "1", "--out", str(serial)]) == 0
    monkeypatch.setenv("UNRAVEL_THREADS", "2")
    assert main(["verify", "--corpus", str(corpus), "--r", "1,2", "--out", str(parallel)]) == 0
    assert (serial / "reports.json").read_bytes() == (parallel / "reports.json").read_bytes()
    assert (serial / "reports.csv").read_bytes() == (parallel / "reports.csv").read_bytes()
    assert read_summary(parallel)["config"]["threads"] == 2


def test_verify_corrupt_file_is_reported_and_skipped(tmp_path):
    corpus = make_corpus(tmp_path)
    (corpus / "broken.edges").write_text("0 one\n")
    out = tmp_path / "out"
    assert main(["verify", "--corpus", str(corpus), "--r", "1", "--out", str(out)]) == 0
    summary = read_summary(out)
    assert len(summary["errors"]) == 1 and "broken.edges" in summary["errors"][0]
    assert summary["graphs"] == 2  # the good files still ran
    assert {row["graph_id"] for row in read_rows(out)} == {"cycle-n20-s0", "random_regular-d3-n20-s1"}


def test_verify_complete_graph_marks_theorem8_skip(tmp_path):
    corpus = tmp_path / "corpus"
    gen(corpus, "complete", "--n", "5")
    out = tmp_path / "out"
    assert main(["verify", "--corpus", str(corpus), "--r", "2", "--out", str(out)]) == 0
    summary = read_summary(out)
    assert summary["totals"]["theorem8"]["hypothesis_skip"] == 1
    assert summary["totals"]["theorem8"]["fail"] == 0
    t8 = next(r for r in read_rows(out) if r["bound"] == "theorem8")
    assert not t8["hypothesis_ok"] and t8["rhs"] is None


def test_verify_runs_injection_checks_on_small_graphs(tmp_path):
    corpus = tmp_path / "corpus"
    gen(corpus, "cycle", "--n", "9")
    out = tmp_path / "out"
    assert main(["verify", "--corpus", str(corpus), "--r", "1,2", "--out", str(out)]) == 0
    injection = read_summary(out)["injection"]
    assert injection["evaluated"] == 2
    assert injection["passed"] == 2 and injection["failures"] == []


def test_verify_rejects_bad_radii(tmp_path):
    assert main(["verify", "--r", "0", "--out", str(tmp_path / "out")]) == 2


# ---------------------------------------------------------------------------
# report


def test_report_replays_verify_output(tmp_path):
    corpus = make_corpus(tmp_path)
    out = tmp_path / "out"
    assert main(["verify", "--corpus", str(corpus), "--r", "1", "--out", str(out)]) == 0
    assert main(["report", str(out)]) == 0


def test_report_exit_one_on_violation(tmp_path):
    row = {
        "graph_id": "bad", "bound": "theorem1", "r": 1,
        "lhs": 1.0, "rhs": 2.0, "slack": -1.0, "witness": None,
        "hypothesis_ok": True, "pass": False, "tol": 1e-9, "runtime_ms": None,
    }
    (tmp_path / "reports.json").write_text(json.dumps({"schema_version": 1, "reports": [row]}))
    assert main(["report", str(tmp_path)]) == 1


def test_report_missing_directory_exits_two(tmp_path):
    assert main(["report", str(tmp_path / "nope")]) == 2


# ---------------------------------------------------------------------------
# converge / cover


def test_converge_on_single_edge_is_flat():
    rows = cmd_converge(complete_graph(2), 0, 10)
    assert [k for k, *_ in rows] == [2, 4, 6, 8, 10]
    for _, s, est, gap in rows:
        assert s == 1
        assert est == pytest.approx(1.0, abs=1e-12)
        assert gap == pytest.approx(0.0, abs=1e-9)


def test_converge_cli_writes_csv(tmp_path, capsys):
    assert main(["converge", "petersen", "--k", "12", "--out", str(tmp_path)]) == 0
    assert "petersen" in capsys.readouterr().out
    lines = (tmp_path / "converge.csv").read_text().splitlines()
    assert lines[0] == "k,s_k,estimate,gap"
    assert len(lines) == 7


def test_converge_missing_file_exits_two(tmp_path):
    assert main(["converge", str(tmp_path / "nope.edges")]) == 2


def test_cover_cycle_matches_closed_form():
    # radius-r unraveled ball of a long cycle is a path on 2r+1 vertices
    rows, capped = cmd_cover(cycle_graph(30), 5)
    assert not capped
    for r, witness, value, rhs in rows:
        assert value == pytest.approx(2.0 * math.cos(math.pi / (2 * r + 2)), abs=1e-9)
        assert rhs == pytest.approx(2.0 * math.cos(math.pi / (r + 2)), abs=1e-12)
        assert value >= rhs - 1e-9


def test_cover_cli_writes_csv(tmp_path, capsys):
    assert main(["cover", "petersen", "--r-max", "3", "--out", str(tmp_path)]) == 0
    assert "corollary_lb2_rhs" in capsys.readouterr().out
    lines = (tmp_path / "cover.csv").read_text().splitlines()
    assert lines[0] == "r,witness,lambda1_cover_ball,theorem1_rhs"
    values = [float(l.split(",")[2]) for l in lines[1:]]
    assert len(values) == 3
    assert values == sorted(values)


# ---------------------------------------------------------------------------
# config plumbing


def test_threads_default_precedence(monkeypatch):
    monkeypatch.setenv("UNRAVEL_THREADS", "7")
    assert _threads_default(3) == 7
    monkeypatch.setenv("UNRAVEL_THREADS", "not-a-number")
    assert _threads_default(3) == 3
    monkeypatch.delenv("UNRAVEL_THREADS")
    assert _threads_default(3) == 3
    assert _threads_default(None) >= 1


def test_runconfig_validate(tmp_path):
    good = RunConfig(corpus=(), outdir=tmp_path / "out")
    good.validate()
    assert (tmp_path / "out").is_dir()
    with pytest.raises(ValueError):
        RunConfig(corpus=(), r_values=(), outdir=tmp_path).validate()
    with pytest.raises(ValueError):
        RunConfig(corpus=(), r_values=(0,), outdir=tmp_path).validate()
    with pytest.raises(ValueError):
        RunConfig(corpus=(), threads=0, outdir=tmp_path).validate()


def test_cmd_verify_smoke_default_corpus(tmp_path):
    config = RunConfig(corpus=(), r_values=(1,), outdir=tmp_path / "out")
    summary, rows = cmd_verify(config)
    assert summary.violations == 0
    assert summary.graphs >= 20
    assert len(rows) == summary.graphs * len(ALL_BOUNDS)
