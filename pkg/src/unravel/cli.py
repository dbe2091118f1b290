"""Command-line harness: corpus generation, bound sweeps, convergence tables.

Subcommands:
    gen       write a graph family to an edge-list file plus metadata
    verify    run every bound over a corpus, emit reports + summary
    converge  closed-walk growth table for one graph and start vertex
    cover     unraveled-ball spectral radius as the radius grows
    report    re-summarize a reports.json written by verify

The verify exit code is nonzero exactly when some bound with a satisfied
hypothesis failed; hypothesis-skips and load errors are reported but do not
fail the run. Reports are sorted by (graph_id, bound, r) and contain no
timing fields, so identical configs produce byte-identical files.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .bounds import (
    BOUND_NAMES,
    DEFLATION_BOUND,
    corollary_lb2_rhs,
    evaluate_all,
    theorem1_rhs,
    two_ball_deflation_check,
)
from .corpus import NAMED, named_graph, smoke_corpus
from .cover import CapExceeded, closed_walk_injection_check, max_unraveled_survey
from .generate import _FAMILY_PARAMS, FAMILIES, GenSpec, generate
from .graph import Graph, GraphError, load_graph, save_edge_list
from .spectral import closed_walk_counts, growth_is_nondecreasing, spectral_radius

SCHEMA_VERSION = 1
ALL_BOUNDS = BOUND_NAMES + (DEFLATION_BOUND,)


@dataclass(frozen=True)
class RunConfig:
    corpus: tuple[str, ...]  # file paths; empty means the built-in smoke corpus
    r_values: tuple[int, ...] = (1, 2, 3)
    eig_tol: float = 1e-10
    slack_tol: float = 1e-9
    cap_nodes: int = 10**6
    threads: int = 1
    outdir: Path = Path("out")
    seed: int = 0

    def validate(self) -> None:
        if not self.r_values or min(self.r_values) < 1:
            raise ValueError("r values must be >= 1")
        if self.cap_nodes <= 0 or self.threads <= 0:
            raise ValueError("caps and parallelism must be positive")
        self.outdir.mkdir(parents=True, exist_ok=True)

    def to_json_dict(self) -> dict:
        return {
            "corpus": list(self.corpus) or "smoke",
            "r_values": list(self.r_values),
            "eig_tol": self.eig_tol,
            "slack_tol": self.slack_tol,
            "cap_nodes": self.cap_nodes,
            "threads": self.threads,
            "outdir": str(self.outdir),
            "seed": self.seed,
        }


@dataclass
class RunSummary:
    totals: dict[str, dict[str, int]] = field(default_factory=dict)
    min_slack: dict[str, dict] = field(default_factory=dict)
    injection: dict = field(default_factory=dict)
    errors: list[str] = field(default_factory=list)
    cap_skips: int = 0
    violations: int = 0
    graphs: int = 0
    wall_time_s: float = 0.0

    def to_json_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "graphs": self.graphs,
            "totals": self.totals,
            "min_slack": self.min_slack,
            "injection": self.injection,
            "cap_skips": self.cap_skips,
            "violations": self.violations,
            "errors": self.errors,
            "wall_time_s": self.wall_time_s,
        }


def _threads_default(flag: int | None) -> int:
    env = os.environ.get("UNRAVEL_THREADS", "").strip()
    if env:
        try:
            value = int(env)
            if value > 0:
                return value
        except ValueError:
            pass
    if flag is not None and flag > 0:
        return flag
    return os.cpu_count() or 1


# ---------------------------------------------------------------------------
# verify


def _verify_task(payload: tuple) -> dict:
    graph_id, n, edges, r, slack_tol, eig_tol, cap, want_injection = payload
    g = Graph.from_edges(n, [tuple(e) for e in edges])
    out: dict = {"reports": [], "injection": None, "error": None}
    try:
        reports = evaluate_all(g, r, tol=slack_tol, graph_id=graph_id, cap=cap, eig_tol=eig_tol)
        reports.append(two_ball_deflation_check(g, r, tol=slack_tol, graph_id=graph_id, eig_tol=eig_tol))
        out["reports"] = [rep.to_json_dict() for rep in reports]
        if want_injection and n <= 12 and g.edge_count:
            bad = [v for v in range(n) if not closed_walk_injection_check(g, v, min(r, 4), max_length=12)]
            out["injection"] = {"graph_id": graph_id, "r": r, "passed": not bad, "failing_vertices": bad}
    except Exception as exc:  # keep the batch alive, surface the failure
        out["error"] = f"{graph_id} r={r}: {type(exc).__name__}: {exc}"
    return out


def _load_corpus(paths: tuple[str, ...], errors: list[str]) -> list[tuple[str, Graph]]:
    if not paths:
        return smoke_corpus()
    files: list[Path] = []
    for raw in paths:
        p = Path(raw)
        if p.is_dir():
            files.extend(sorted(q for q in p.iterdir() if q.suffix in (".edges", ".json")))
        else:
            files.append(p)
    entries = []
    for f in files:
        if f.name.endswith(".meta.json"):
            continue
        try:
            entries.append((f.stem, load_graph(f)))
        except (GraphError, OSError, ValueError) as exc:
            errors.append(f"{f}: {type(exc).__name__}: {exc}")
    return entries


def _summarize(rows: list[dict], injections: list[dict], errors: list[str], wall: float, graphs: int) -> RunSummary:
    s = RunSummary(errors=list(errors), graphs=graphs, wall_time_s=wall)
    for name in ALL_BOUNDS:
        s.totals[name] = {"pass": 0, "fail": 0, "hypothesis_skip": 0}
    for row in rows:
        bucket = s.totals.setdefault(row["bound"], {"pass": 0, "fail": 0, "hypothesis_skip": 0})
        if not row["hypothesis_ok"]:
            bucket["hypothesis_skip"] += 1
        elif row["pass"]:
            bucket["pass"] += 1
        else:
            bucket["fail"] += 1
            s.violations += 1
        if row["bound"] == "theorem1" and row["lhs"] is None and row["rhs"] is not None:
            s.cap_skips += 1
        if row["hypothesis_ok"] and row["slack"] is not None:
            best = s.min_slack.get(row["bound"])
            if best is None or row["slack"] < best["slack"]:
                s.min_slack[row["bound"]] = {"slack": row["slack"], "graph_id": row["graph_id"], "r": row["r"]}
    evaluated = [i for i in injections if i is not None]
    s.injection = {
        "evaluated": len(evaluated),
        "passed": sum(1 for i in evaluated if i["passed"]),
        "failures": [i for i in evaluated if not i["passed"]],
    }
    return s


def _write_reports(outdir: Path, rows: list[dict], summary: RunSummary, config: RunConfig) -> None:
    with open(outdir / "reports.json", "w", encoding="utf-8") as f:
        json.dump({"schema_version": SCHEMA_VERSION, "reports": rows}, f, indent=2)
        f.write("\n")
    payload = summary.to_json_dict()
    payload["config"] = config.to_json_dict()
    with open(outdir / "summary.json", "w", encoding="utf-8") as f:
        json.dump(payload, f, indent=2)
        f.write("\n")
    cols = ["graph_id", "bound", "r", "lhs", "rhs", "slack", "witness", "hypothesis_ok", "pass", "tol", "runtime_ms"]
    with open(outdir / "reports.csv", "w", encoding="utf-8", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(cols)
        for row in rows:
            w.writerow([_csv_cell(row[c]) for c in cols])


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, list):
        return json.dumps(value, separators=(",", ":"))
    return str(value)


def cmd_verify(config: RunConfig) -> tuple[RunSummary, list[dict]]:
    config.validate()
    start = time.perf_counter()
    errors: list[str] = []
    corpus = _load_corpus(config.corpus, errors)
    tasks = [
        (gid, g.vertex_count, list(g.edges()), r, config.slack_tol, config.eig_tol, config.cap_nodes, True)
        for gid, g in corpus
        for r in config.r_values
    ]
    if config.threads > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=config.threads) as pool:
            results = list(pool.map(_verify_task, tasks, chunksize=4))
    else:
        results = [_verify_task(t) for t in tasks]
    rows: list[dict] = []
    injections: list[dict] = []
    for res in results:
        rows.extend(res["reports"])
        if res["injection"] is not None:
            injections.append(res["injection"])
        if res["error"] is not None:
            errors.append(res["error"])
    rows.sort(key=lambda row: (row["graph_id"], row["bound"], row["r"]))
    summary = _summarize(rows, injections, errors, time.perf_counter() - start, len(corpus))
    _write_reports(config.outdir, rows, summary, config)
    return summary, rows


def _print_summary(summary: RunSummary) -> None:
    print(f"graphs {summary.graphs}  cap_skips {summary.cap_skips}  errors {len(summary.errors)}")
    for name, counts in summary.totals.items():
        best = summary.min_slack.get(name)
        tail = f"  min_slack {best['slack']:+.3e} ({best['graph_id']}, r={best['r']})" if best else ""
        print(
            f"{name:22s} pass {counts['pass']:4d}  fail {counts['fail']:4d}"
            f"  skip {counts['hypothesis_skip']:4d}{tail}"
        )
    inj = summary.injection
    if inj.get("evaluated"):
        print(f"injection checks       pass {inj['passed']:4d}  of {inj['evaluated']:4d}")
    for err in summary.errors:
        print(f"error: {err}", file=sys.stderr)


# ---------------------------------------------------------------------------
# gen


def cmd_gen(family: str, params: dict, seed: int, outdir: Path) -> Path:
    outdir.mkdir(parents=True, exist_ok=True)
    if family in NAMED:
        g = named_graph(family)
        name = family
        meta: dict = {"schema_version": SCHEMA_VERSION, "family": family}
    else:
        spec = GenSpec(family, params, seed)
        g = generate(spec)
        name = spec.name()
        meta = {"schema_version": SCHEMA_VERSION, **spec.to_json_dict()}
    path = outdir / f"{name}.edges"
    save_edge_list(g, path)
    meta.update({"vertices": g.vertex_count, "edges": g.edge_count})
    with open(outdir / f"{name}.meta.json", "w", encoding="utf-8") as f:
        json.dump(meta, f, indent=2)
        f.write("\n")
    return path


# ---------------------------------------------------------------------------
# converge / cover


def _resolve_graph(arg: str) -> tuple[str, Graph]:
    if arg in NAMED:
        return arg, named_graph(arg)
    path = Path(arg)
    if path.exists():
        return path.stem, load_graph(path)
    raise GraphError(f"no such graph or file: {arg}")


def cmd_converge(g: Graph, v: int, max_length: int) -> list[tuple[int, int, float, float]]:
    """Rows (k, s_k(v), s_k(v)^(1/k), lambda1 - estimate) for even k."""
    counts = closed_walk_counts(g, v, max_length)
    if not growth_is_nondecreasing(counts):
        raise GraphError("closed-walk growth decreased; counting bug")
    lam1 = spectral_radius(g).value
    rows = []
    for k in range(2, max_length + 1, 2):
        s = counts[k]
        est = math.exp(math.log(s) / k) if s > 0 else 0.0
        rows.append((k, s, est, lam1 - est))
    return rows


def cmd_cover(g: Graph, r_max: int, tol: float = 1e-9) -> tuple[list[tuple], bool]:
    """Rows (r, witness, lambda1(unraveled ball), theorem1_rhs); True if capped early."""
    rows: list[tuple] = []
    prev = -math.inf
    for r in range(1, r_max + 1):
        try:
            survey = max_unraveled_survey(g, r)
        except CapExceeded:
            return rows, True
        if survey.capped:
            return rows, True
        rhs = theorem1_rhs(g, r)
        if survey.value < prev - tol:
            raise GraphError(f"unraveled ball radius sequence decreased at r={r}")
        if survey.value < rhs - tol:
            raise GraphError(f"unraveled ball value below its bound at r={r}")
        prev = survey.value
        rows.append((r, survey.witness, survey.value, rhs))
    return rows, False


# ---------------------------------------------------------------------------
# argument parsing


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", type=Path, default=Path("out"), help="output directory")


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="unravel", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = top.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write a graph family to disk")
    g.add_argument("family", help="family name, e.g. cycle, random-regular, petersen")
    for flag in ("n", "d", "a", "b", "k", "depth"):
        g.add_argument(f"--{flag}", type=int)
    g.add_argument("--p", type=float, help="edge probability (erdos-renyi)")
    g.add_argument("--seed", type=int, default=0)
    _add_common(g)

    v = sub.add_parser("verify", help="run all bounds over a corpus")
    v.add_argument("--corpus", nargs="*", default=(), help="graph files or directories; default: built-in smoke corpus")
    v.add_argument("--r", default="1,2,3", help="comma-separated radii")
    v.add_argument("--eig-tol", type=float, default=1e-10)
    v.add_argument("--slack-tol", type=float, default=1e-9)
    v.add_argument("--cap-nodes", type=int, default=10**6)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--threads", type=int, default=None, help="worker processes; UNRAVEL_THREADS overrides")
    _add_common(v)

    c = sub.add_parser("converge", help="closed-walk growth table")
    c.add_argument("graph", help="edge-list/JSON file or a named graph")
    c.add_argument("--v", type=int, default=0, help="start vertex")
    c.add_argument("--k", type=int, default=40, help="maximum walk length")
    c.add_argument("--out", type=Path, default=None, help="also write a CSV into this directory")

    o = sub.add_parser("cover", help="unraveled-ball radius sweep")
    o.add_argument("graph", help="edge-list/JSON file or a named graph")
    o.add_argument("--r-max", type=int, default=6)
    o.add_argument("--out", type=Path, default=None, help="also write a CSV into this directory")

    rp = sub.add_parser("report", help="re-summarize an existing reports.json")
    rp.add_argument("dir", type=Path, help="directory containing reports.json")
    return top


def _gen_args_to_params(args: argparse.Namespace, family: str) -> dict:
    if family in NAMED:
        return {}
    if family not in FAMILIES:
        raise GraphError(f"unknown family {family!r}")
    wanted = _FAMILY_PARAMS[family]
    params = {}
    for key in wanted:
        value = getattr(args, key)
        if value is None:
            raise GraphError(f"{family} needs --{key}")
        params[key] = value
    return params


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "gen":
            family = args.family.replace("-", "_")
            family = args.family if args.family in NAMED else family
            path = cmd_gen(family, _gen_args_to_params(args, family), args.seed, args.out)
            print(path)
            return 0

        if args.command == "verify":
            config = RunConfig(
                corpus=tuple(args.corpus),
                r_values=tuple(int(x) for x in str(args.r).split(",") if x != ""),
                eig_tol=args.eig_tol,
                slack_tol=args.slack_tol,
                cap_nodes=args.cap_nodes,
                threads=_threads_default(args.threads),
                outdir=args.out,
                seed=args.seed,
            )
            summary, _ = cmd_verify(config)
            _print_summary(summary)
            return 1 if summary.violations else 0

        if args.command == "converge":
            gid, g = _resolve_graph(args.graph)
            rows = cmd_converge(g, args.v, args.k)
            print(f"# {gid}, start vertex {args.v}")
            print(f"{'k':>4s} {'s_k':>24s} {'s_k^(1/k)':>14s} {'lambda1-est':>14s}")
            for k, s, est, gap in rows:
                print(f"{k:4d} {s:24d} {est:14.10f} {gap:14.10f}")
            if args.out is not None:
                args.out.mkdir(parents=True, exist_ok=True)
                with open(args.out / "converge.csv", "w", encoding="utf-8", newline="") as f:
                    w = csv.writer(f, lineterminator="\n")
                    w.writerow(["k", "s_k", "estimate", "gap"])
                    w.writerows(rows)
            return 0

        if args.command == "cover":
            gid, g = _resolve_graph(args.graph)
            rows, capped = cmd_cover(g, args.r_max)
            print(f"# {gid}, corollary_lb2_rhs = {corollary_lb2_rhs(g):.10f}")
            print(f"{'r':>3s} {'witness':>8s} {'lambda1(cover ball)':>20s} {'theorem1_rhs':>14s}")
            for r, witness, value, rhs in rows:
                print(f"{r:3d} {witness:8d} {value:20.10f} {rhs:14.10f}")
            if capped:
                print("# truncated: node cap exceeded", file=sys.stderr)
            if args.out is not None:
                args.out.mkdir(parents=True, exist_ok=True)
                with open(args.out / "cover.csv", "w", encoding="utf-8", newline="") as f:
                    w = csv.writer(f, lineterminator="\n")
                    w.writerow(["r", "witness", "lambda1_cover_ball", "theorem1_rhs"])
                    w.writerows(rows)
            return 0

        if args.command == "report":
            with open(args.dir / "reports.json", encoding="utf-8") as f:
                rows = json.load(f)["reports"]
            summary = _summarize(rows, [], [], 0.0, len({row["graph_id"] for row in rows}))
            _print_summary(summary)
            return 1 if summary.violations else 0
    except (GraphError, CapExceeded, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 2


if __name__ == "__main__":
    sys.exit(main())
