"""Closed-form spectral lower bounds and the comparison plumbing around them.

Each bound gets a pure right-hand-side evaluator plus a report row pairing it
with the measured left-hand side on a concrete graph. Hypotheses are always
recomputed from the graph itself: regularity, minimum and average degree,
robust average degree after ball deletion, and edge-pair distance conditions.
A report never silently disappears; inapplicable bounds are emitted with
hypothesis_ok = False.

The degree-weighted bound (1/|E|) sum d(u) sqrt(d(u)-1), with or without the
cos(pi/(r+2)) factor, anchors most rows; its geometric-mean relaxation
2 prod (sqrt(d(u)-1))^(d(u)/sum d) is evaluated in log-space. The second
eigenvalue rows follow the robust-average-degree route: deleting any ball of
radius r keeps the average degree up, so two disjoint non-adjacent balls with
large spectral radius exist, and deflation against the top eigenvector turns
the smaller of the two into a lower bound for lambda_2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import scipy.sparse.csgraph as csgraph

from .cover import CapExceeded, DEFAULT_BALL_CAP, max_unraveled_survey
from .graph import (
    Graph,
    GraphError,
    average_degree,
    ball,
    delete_ball,
    induced_subgraph,
    robust_profile,
)
from .spectral import (
    DENSE_THRESHOLD,
    _start_vector,
    second_largest_eigenvalue,
    spectral_radius,
)

BOUND_NAMES = (
    "theorem1",
    "corollary_lb2",
    "amgm_hoory_form",
    "lemma_lb3",
    "theorem8",
    "alon_boppana_classic",
)
DEFLATION_BOUND = "theorem8_deflation"
DEFAULT_SLACK_TOL = 1e-9


@dataclass(frozen=True)
class BoundReport:
    """One evaluated bound on one graph at one radius.

    passed is hypothesis_ok and slack >= -tol; lhs, rhs, slack are None when
    a node cap or an undefined quantity blocked the evaluation (such rows
    always carry hypothesis_ok = False). runtime_ms stays None so that report
    files are byte-stable across machines and runs.
    """

    graph_id: str
    bound: str
    r: int
    lhs: float | None
    rhs: float | None
    slack: float | None
    witness: object
    hypothesis_ok: bool
    passed: bool
    tol: float
    runtime_ms: float | None = None

    def to_json_dict(self) -> dict:
        return {
            "graph_id": self.graph_id,
            "bound": self.bound,
            "r": self.r,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "witness": _witness_json(self.witness),
            "hypothesis_ok": self.hypothesis_ok,
            "pass": self.passed,
            "tol": self.tol,
            "runtime_ms": self.runtime_ms,
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "BoundReport":
        w = obj.get("witness")
        if isinstance(w, list):
            w = tuple(tuple(x) if isinstance(x, list) else x for x in w)
        return cls(
            obj["graph_id"],
            obj["bound"],
            obj["r"],
            obj["lhs"],
            obj["rhs"],
            obj["slack"],
            w,
            obj["hypothesis_ok"],
            obj["pass"],
            obj["tol"],
            obj.get("runtime_ms"),
        )


def _witness_json(w):
    if w is None or isinstance(w, (int, str)):
        return w
    return [_witness_json(x) for x in w]


def _report(graph_id, bound, r, lhs, rhs, witness, hypothesis_ok, tol) -> BoundReport:
    lhs = None if lhs is None else float(lhs)
    rhs = None if rhs is None else float(rhs)
    slack = None if lhs is None or rhs is None else lhs - rhs
    passed = bool(hypothesis_ok and slack is not None and slack >= -tol)
    return BoundReport(graph_id, bound, int(r), lhs, rhs, slack, witness, bool(hypothesis_ok), passed, float(tol))


# ---------------------------------------------------------------------------
# right-hand sides


def _degree_weight_sum(g: Graph) -> float:
    d = g.degrees().astype(np.float64)
    return float(np.sum(np.where(d > 0, d * np.sqrt(np.maximum(d - 1.0, 0.0)), 0.0)))


def theorem1_rhs(g: Graph, r: int) -> float:
    """(1/|E|) sum_u d(u) sqrt(d(u)-1) * cos(pi/(r+2))."""
    if g.edge_count == 0:
        raise GraphError("bound needs at least one edge")
    if r < 0:
        raise ValueError("radius must be nonnegative")
    return _degree_weight_sum(g) / g.edge_count * math.cos(math.pi / (r + 2))


def corollary_lb2_rhs(g: Graph) -> float:
    """The r-free form: (1/|E|) sum_u d(u) sqrt(d(u)-1)."""
    if g.edge_count == 0:
        raise GraphError("bound needs at least one edge")
    return _degree_weight_sum(g) / g.edge_count


def amgm_rhs(g: Graph) -> float:
    """Geometric-mean form 2 prod_u (sqrt(d(u)-1))^(d(u)/sum d), in log-space.

    A degree-1 vertex contributes a zero factor with positive exponent, so
    the product collapses to 0 exactly.
    """
    if g.vertex_count == 0:
        raise GraphError("bound needs a nonempty graph")
    d = g.degrees().astype(np.float64)
    if d.min(initial=np.inf) < 1:
        raise GraphError("bound needs minimum degree >= 1")
    if (d == 1).any():
        return 0.0
    total = float(d.sum())
    return 2.0 * math.exp(float(np.sum(d / total * 0.5 * np.log(d - 1.0))))


def lemma_lb3_rhs(d, r: int) -> float:
    """2 sqrt(d-1) cos(pi/(r+2)) for average degree d >= 1."""
    d = float(d)
    if d < 1:
        raise ValueError("average degree must be >= 1")
    if r < 0:
        raise ValueError("radius must be nonnegative")
    return 2.0 * math.sqrt(d - 1.0) * math.cos(math.pi / (r + 2))


def theorem8_rhs(d, r: int) -> float:
    """2 sqrt(d-1) cos(pi/(r+1)) for robust average degree d >= 1, r >= 1."""
    d = float(d)
    if d < 1:
        raise ValueError("robust average degree must be >= 1")
    if r < 1:
        raise ValueError("radius must be >= 1")
    return 2.0 * math.sqrt(d - 1.0) * math.cos(math.pi / (r + 1))


def alon_boppana_classic_rhs(d: int, r: int) -> float:
    """2 (1 - 1/r) sqrt(d-1) + 1/r for d-regular graphs, d >= 2, r >= 1."""
    if d < 2:
        raise ValueError("degree must be >= 2")
    if r < 1:
        raise ValueError("radius must be >= 1")
    return 2.0 * (1.0 - 1.0 / r) * math.sqrt(d - 1.0) + 1.0 / r


# ---------------------------------------------------------------------------
# hypothesis side


def _all_pairs_distances(g: Graph) -> np.ndarray:
    """BFS distance matrix, cached on the graph; inf across components."""
    cached = g._cache.get("apsp")
    if cached is None:
        if g.vertex_count == 0:
            cached = np.zeros((0, 0))
        else:
            cached = csgraph.shortest_path(g.sparse(), method="D", unweighted=True)
        g._cache["apsp"] = cached
    return cached


def far_edge_pair(g: Graph, min_distance: int) -> tuple[tuple[int, int], tuple[int, int]] | None:
    """Two edges every endpoint pair of which is >= min_distance apart.

    Returns the lexicographically first such pair, or None. Distance between
    edges is the minimum over their endpoints.
    """
    edges = list(g.edges())
    if len(edges) < 2:
        return None
    if min_distance <= 0:
        return edges[0], edges[1]
    dist = _all_pairs_distances(g)
    eu = np.asarray([e[0] for e in edges])
    ev = np.asarray([e[1] for e in edges])
    for i, (u, v) in enumerate(edges):
        near = np.minimum(dist[u], dist[v])  # distance from edge (u, v) to each vertex
        ok = near >= min_distance
        hits = np.flatnonzero(ok[eu] & ok[ev])
        if hits.size:
            return (u, v), edges[int(hits[0])]
    return None


def has_far_edge_pair(g: Graph, min_distance: int) -> bool:
    return far_edge_pair(g, min_distance) is not None


@dataclass(frozen=True)
class HypothesisCheck:
    """Everything the bounds' hypotheses read off a graph, recomputed fresh."""

    r: int
    min_degree: int
    average_degree: Fraction
    regular: int | None
    robust_average: Fraction
    robust_empties: bool
    robust_witness: int | None
    diameter: float
    far_edge_distance_ok: bool

    @property
    def min_degree_ok(self) -> bool:
        return self.min_degree >= 2

    def robust_degree_ok(self, d) -> bool:
        return not self.robust_empties and self.robust_average >= d


def hypothesis_check(g: Graph, r: int) -> HypothesisCheck:
    if g.vertex_count == 0:
        raise GraphError("hypothesis check of the empty graph")
    stats = g.degree_stats()
    profile = robust_profile(g, r)
    dist = _all_pairs_distances(g)
    diameter = float(dist.max(initial=0.0)) if g.vertex_count else 0.0
    return HypothesisCheck(
        int(r),
        stats.min_degree,
        stats.average_degree,
        g.is_regular(),
        profile.value,
        profile.empties,
        profile.witness,
        diameter,
        far_edge_pair(g, 2 * r) is not None,
    )


# ---------------------------------------------------------------------------
# measured left-hand sides


def ball_spectral_radii(g: Graph, r: int, vertices: list[int] | None = None) -> np.ndarray:
    """lambda_1 of the ordinary ball G(v, r) for each center.

    Balls repeat heavily (at large r most are the whole graph), so results
    are memoized by vertex set. Dense solves below the usual threshold,
    power iteration above it.
    """
    verts = list(range(g.vertex_count)) if vertices is None else list(vertices)
    out = np.zeros(len(verts), dtype=np.float64)
    seen: dict[bytes, float] = {}
    for j, v in enumerate(verts):
        members = sorted(ball(g, v, r))
        key = np.asarray(members, dtype=np.int64).tobytes()
        val = seen.get(key)
        if val is None:
            sub, _ = induced_subgraph(g, members)
            if sub.vertex_count <= DENSE_THRESHOLD:
                val = float(np.linalg.eigvalsh(sub.dense())[-1]) if sub.vertex_count else 0.0
            else:
                val = spectral_radius(sub).value
            seen[key] = val
        out[j] = val
    return out


def max_ball_spectral_radius(
    g: Graph, r: int, stop_at: float | None = None, max_steps: int = 256
) -> tuple[int, float, bool]:
    """Maximize lambda_1(G(v, r)) over centers.

    With stop_at set, centers are tried in decreasing-degree order and a few
    Rayleigh-quotient power steps certify lambda_1 >= stop_at without full
    convergence (the quotient is always a valid lower bound); the first
    center to cross wins and the flag comes back True. Without stop_at, or
    when nothing crosses, the exact sweep decides.
    """
    if g.vertex_count == 0:
        raise GraphError("ball sweep of the empty graph")
    if stop_at is not None:
        order = sorted(range(g.vertex_count), key=lambda v: (-g.degree(v), v))
        for v in order:
            members = sorted(ball(g, v, r))
            sub, _ = induced_subgraph(g, members)
            if sub.edge_count == 0:
                continue
            a = sub.sparse()
            x = _start_vector(sub.vertex_count)
            for _ in range(max_steps):
                y = a @ x
                rq = float(x @ y)  # x is unit length
                if rq >= stop_at:
                    return v, rq, True
                ny = float(np.linalg.norm(y))
                if ny == 0.0:
                    break
                x = y / ny
    radii = ball_spectral_radii(g, r)
    v = int(np.argmax(radii))
    return v, float(radii[v]), False


# ---------------------------------------------------------------------------
# report assembly


def evaluate_all(
    g: Graph,
    r: int,
    tol: float = DEFAULT_SLACK_TOL,
    graph_id: str = "graph",
    cap: int = DEFAULT_BALL_CAP,
    eig_tol: float = 1e-10,
) -> list[BoundReport]:
    """Every bound on one graph at one radius, hypothesis-checked, never skipped."""
    hc = hypothesis_check(g, r)
    n, m = g.vertex_count, g.edge_count
    reports: list[BoundReport] = []

    t1_rhs = theorem1_rhs(g, r) if m else None
    lb2 = corollary_lb2_rhs(g) if m else None

    hyp1 = hc.min_degree_ok and m >= 1
    lhs1 = witness1 = None
    if m:
        try:
            survey = max_unraveled_survey(g, r, tol=eig_tol, cap=cap)
            if survey.capped:
                hyp1 = False
            else:
                lhs1, witness1 = survey.value, survey.witness
        except CapExceeded:
            hyp1 = False
    reports.append(_report(graph_id, "theorem1", r, lhs1, t1_rhs, witness1, hyp1, tol))

    reports.append(_report(graph_id, "corollary_lb2", r, lb2, t1_rhs, None, hc.min_degree_ok and m >= 1, tol))

    amgm = amgm_rhs(g) if hc.min_degree >= 1 and n else None
    reports.append(_report(graph_id, "amgm_hoory_form", r, lb2, amgm, None, hc.min_degree >= 1 and m >= 1, tol))

    hyp3 = hc.average_degree >= 1
    lhs3 = witness3 = None
    rhs3 = lemma_lb3_rhs(hc.average_degree, r) if hyp3 else None
    radii = ball_spectral_radii(g, r)
    if radii.size:
        witness3 = int(np.argmax(radii))
        lhs3 = float(radii[witness3])
    reports.append(_report(graph_id, "lemma_lb3", r, lhs3, rhs3, witness3, hyp3, tol))

    lam2 = second_largest_eigenvalue(g, tol=eig_tol) if n >= 2 else None
    hyp8 = n >= 2 and r >= 1 and hc.robust_degree_ok(1)
    rhs8 = theorem8_rhs(hc.robust_average, r) if hyp8 else None
    reports.append(_report(graph_id, "theorem8", r, lam2, rhs8, hc.robust_witness, hyp8, tol))

    hyp_ab = n >= 2 and r >= 1 and hc.regular is not None and hc.regular >= 2 and hc.far_edge_distance_ok
    rhs_ab = alon_boppana_classic_rhs(hc.regular, r) if hyp_ab else None
    wit_ab = far_edge_pair(g, 2 * r) if hyp_ab else None
    reports.append(_report(graph_id, "alon_boppana_classic", r, lam2, rhs_ab, wit_ab, hyp_ab, tol))

    return reports


def two_ball_deflation_check(
    g: Graph, r: int, tol: float = DEFAULT_SLACK_TOL, graph_id: str = "graph", eig_tol: float = 1e-10
) -> BoundReport:
    """Reenact the two-ball deflation behind the robust second-eigenvalue bound.

    Picks v1 maximizing lambda_1(G(v, r-1)), deletes the radius-r ball at v1,
    picks v2 the same way in the remainder, checks the two radius-(r-1) balls
    are disjoint and non-adjacent, and reports lambda_2(G) against
    min(lambda_1(G_1), lambda_1(G_2)). The orthogonal mixture of the two ball
    eigenvectors forces lambda_2 to be at least that minimum.
    """
    if r < 1:
        raise ValueError("radius must be >= 1")
    if g.vertex_count < 2:
        return _report(graph_id, DEFLATION_BOUND, r, None, None, None, False, tol)
    radii = ball_spectral_radii(g, r - 1)
    v1 = int(np.argmax(radii))
    ball1 = sorted(ball(g, v1, r - 1))
    remainder, ids = delete_ball(g, v1, r)
    if remainder.vertex_count == 0:
        return _report(graph_id, DEFLATION_BOUND, r, None, None, (v1, None), False, tol)
    radii2 = ball_spectral_radii(remainder, r - 1)
    v2_local = int(np.argmax(radii2))
    v2 = int(ids[v2_local])
    ball2 = sorted(int(ids[w]) for w in ball(remainder, v2_local, r - 1))
    overlap = set(ball1) & set(ball2)
    assert not overlap, f"deflation balls intersect at {sorted(overlap)}"
    b2 = set(ball2)
    for u in ball1:
        touching = b2.intersection(g.neighbors(u))
        assert not touching, f"deflation balls adjacent via ({u}, {sorted(touching)[0]})"
    lam2 = second_largest_eigenvalue(g, tol=eig_tol)
    rhs = min(float(radii[v1]), float(radii2[v2_local]))
    return _report(graph_id, DEFLATION_BOUND, r, lam2, rhs, (v1, v2), True, tol)


def hoory_context(g: Graph, r: int, c: float = 1.0) -> dict:
    """Context-only evaluation of the log-factor robust bound.

    The source states an absolute constant without a value; c here is
    illustrative only and the result never feeds pass/fail. The left side is
    max(lambda_2, |lambda_min|), the second largest eigenvalue in absolute
    value.
    """
    hc = hypothesis_check(g, r)
    applicable = g.vertex_count >= 2 and r >= 2 and hc.robust_degree_ok(2)
    out = {
        "bound": "hoory_log_form",
        "note": "illustrative, constant unspecified in source",
        "c": float(c),
        "r": int(r),
        "applicable": applicable,
        "robust_average_degree": float(hc.robust_average),
        "lhs": None,
        "rhs": None,
    }
    if applicable:
        w = np.linalg.eigvalsh(g.dense()) if g.vertex_count <= DENSE_THRESHOLD else None
        if w is not None:
            lam2, lam_min = float(w[-2]), float(w[0])
        else:
            from .spectral import smallest_eigenvalue

            lam2 = second_largest_eigenvalue(g)
            lam_min = smallest_eigenvalue(g)
        d = float(hc.robust_average)
        out["lhs"] = max(lam2, abs(lam_min))
        out["rhs"] = 2.0 * (1.0 - c * math.log(r) / r) * math.sqrt(d - 1.0)
    return out
