"""Unraveled balls, walk forests, and the test-vector machinery built on them.

A walk (v0, ..., vi) is non-backtracking when v_{j} != v_{j+2} for all j.
The unraveled ball of radius r at v collects every such walk from v of length
at most r; prefix-extension makes this a tree, the radius-r ball around the
trivial walk in the universal cover of the graph. Its spectral radius lower
bounds that of the ordinary ball G(v, r), and maximizing it over v is how the
degree-weighted lower bound on lambda_1 gets witnessed.

The walk forest at radius r has one node per non-backtracking walk of length
1..r+1, adjacent under one-step extension; components T_e are indexed by the
directed edge the walk starts with. Walks carry the occupation probabilities
of the uniform-start non-backtracking Markov chain, p(w) = (1/|W_1|) *
prod 1/(d(v_j)-1) over interior vertices, and the test vector weights sqrt(p)
by the sine eigenvector of a path. Every probability here is a reciprocal
integer; we carry the integer denominators in float64, which is exact as long
as they stay below 2^53, and drop to log-space beyond that.

Everything is built level by level with flat arrays, so the expensive graphs
stay inside numpy. Node caps make exponential blowup a loud error rather than
a hang.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterator

import numpy as np

from .graph import Graph, GraphError, ball, induced_subgraph, save_edge_list
from .spectral import closed_walk_counts
from .treesolve import (
    LeveledForest,
    eigencount_above,
    eigencount_above_by_owner,
    max_eigenvalue,
    max_eigenvalue_by_owner,
    max_eigenvalue_with_owner,
)

DEFAULT_BALL_CAP = 10 ** 6
DEFAULT_FOREST_CAP = 10 ** 7
_EXACT_DENOMINATOR_LIMIT = float(2 ** 53)
_NODE_BUDGET = 2_000_000  # soft per-chunk materialization bound


class CapExceeded(RuntimeError):
    """A construction would exceed its node cap; partial_count is what fit."""

    def __init__(self, message: str, partial_count: int = 0):
        super().__init__(message)
        self.partial_count = int(partial_count)


def _extend(indptr, indices, deg, term, prev):
    """One non-backtracking step for a batch of walks.

    term[k] is walk k's terminal vertex, prev[k] the vertex before it (-1 at
    a trivial walk). Returns (row, child) where child are the new terminals
    and row indexes the parent walk of each.
    """
    counts = deg[term]
    total = int(counts.sum())
    if total == 0:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    row = np.repeat(np.arange(term.size, dtype=np.int64), counts)
    offs = np.concatenate(([0], np.cumsum(counts)[:-1]))
    pos = np.arange(total, dtype=np.int64) - np.repeat(offs, counts)
    cand = indices[np.repeat(indptr[term], counts) + pos]
    keep = cand != prev[row]
    return row[keep], cand[keep]


@dataclass(frozen=True)
class UnraveledBall:
    """Tree of non-backtracking walks of length <= radius from center.

    Nodes are stored level-contiguously (offsets slices depth k); node 0 is
    the trivial walk. terminal[k] is the walk's endpoint in the base graph,
    which is also the node's label under the covering map.
    """

    center: int
    radius: int
    parent: np.ndarray
    terminal: np.ndarray
    offsets: np.ndarray

    @property
    def node_count(self) -> int:
        return int(self.parent.size)

    @property
    def depth_count(self) -> int:
        return int(self.offsets.size - 1)

    def forest(self) -> LeveledForest:
        return LeveledForest(self.parent, self.offsets)

    def as_graph(self) -> Graph:
        edges = ((int(self.parent[k]), k) for k in range(1, self.node_count))
        return Graph.from_edges(self.node_count, edges)

    def walk(self, node: int) -> tuple[int, ...]:
        seq = []
        k = int(node)
        while k >= 0:
            seq.append(int(self.terminal[k]))
            k = int(self.parent[k])
        return tuple(reversed(seq))

    def walks(self) -> Iterator[tuple[int, ...]]:
        return (self.walk(k) for k in range(self.node_count))

    def spectral_radius_bracket(self, tol: float = 1e-11) -> tuple[float, float]:
        return max_eigenvalue(self.forest(), tol)

    def validate(self, g: Graph) -> None:
        """Check the defining invariant against the base graph.

        Children of a node with terminal u and parent-terminal p are exactly
        the neighbors of u other than p; nodes at depth radius have none.
        """
        assert self.depth_count <= self.radius + 1
        assert int(self.terminal[0]) == self.center and int(self.parent[0]) == -1
        children: dict[int, list[int]] = {}
        for k in range(1, self.node_count):
            children.setdefault(int(self.parent[k]), []).append(int(self.terminal[k]))
        for k in range(self.node_count):
            depth = int(np.searchsorted(self.offsets, k, side="right")) - 1
            u = int(self.terminal[k])
            expected = set(g.neighbors(u))
            if k > 0:
                expected.discard(int(self.terminal[int(self.parent[k])]))
            got = children.get(k, [])
            if depth == self.radius:
                assert got == [], "walks beyond the radius"
            else:
                assert sorted(got) == sorted(expected), f"node {k}: {got} != {sorted(expected)}"

    def export(self, prefix: str | Path) -> None:
        """Write the tree as an edge list plus a label sidecar."""
        prefix = Path(prefix)
        save_edge_list(self.as_graph(), prefix.parent / (prefix.name + ".edges"))
        sidecar = {
            "schema_version": 1,
            "center": self.center,
            "radius": self.radius,
            "terminal": [int(t) for t in self.terminal],
        }
        (prefix.parent / (prefix.name + ".labels.json")).write_text(
            json.dumps(sidecar, indent=1) + "\n"
        )


def unraveled_ball(g: Graph, v: int, r: int, cap: int = DEFAULT_BALL_CAP) -> UnraveledBall:
    """Build the unraveled ball of radius r at v, level by level."""
    g._check_vertex(v)
    if r < 0:
        raise GraphError("radius must be nonnegative")
    if cap < 1:
        raise GraphError("cap must be positive")
    indptr, indices = g.csr()
    deg = g.degrees()
    parents = [np.full(1, -1, dtype=np.int64)]
    terms = [np.full(1, v, dtype=np.int64)]
    offsets = [0, 1]
    term = terms[0]
    prev = np.full(1, -1, dtype=np.int64)
    ids = np.zeros(1, dtype=np.int64)
    count = 1
    if count > cap:
        raise CapExceeded("cap smaller than the trivial walk", 0)
    for _ in range(r):
        row, child = _extend(indptr, indices, deg, term, prev)
        if child.size == 0:
            break
        if count + child.size > cap:
            raise CapExceeded(
                f"unraveled ball at vertex {v} exceeds cap {cap}", count
            )
        parents.append(ids[row])
        terms.append(child)
        prev = term[row]
        term = child
        ids = np.arange(count, count + child.size, dtype=np.int64)
        count += child.size
        offsets.append(count)
    return UnraveledBall(
        int(v),
        int(r),
        np.concatenate(parents),
        np.concatenate(terms),
        np.asarray(offsets, dtype=np.int64),
    )


def enumerate_nb_walks(
    g: Graph, v: int, max_len: int, cap: int = DEFAULT_BALL_CAP
) -> list[tuple[int, ...]]:
    """All non-backtracking walks from v of length <= max_len.

    Depth-first preorder with neighbors ascending: each walk's prefix appears
    before it, so the list linearizes the walk tree.
    """
    g._check_vertex(v)
    if max_len < 0:
        raise GraphError("max_len must be nonnegative")
    adj = g.adjacency
    out: list[tuple[int, ...]] = []
    stack: list[tuple[int, tuple[int, ...]]] = [(-1, (v,))]
    while stack:
        p, walk = stack.pop()
        out.append(walk)
        if len(out) > cap:
            raise CapExceeded(f"walk enumeration at {v} exceeds cap {cap}", len(out) - 1)
        if len(walk) - 1 == max_len:
            continue
        t = walk[-1]
        for w in reversed(adj[t]):
            if w != p:
                stack.append((t, walk + (w,)))
    return out


def _merge_balls(balls: list[UnraveledBall]) -> LeveledForest:
    """Interleave leveled balls into one owner-tagged leveled forest."""
    depth = max(b.depth_count for b in balls)
    sizes = np.zeros((depth, len(balls)), dtype=np.int64)
    for bi, b in enumerate(balls):
        for k in range(b.depth_count):
            sizes[k, bi] = b.offsets[k + 1] - b.offsets[k]
    level_totals = sizes.sum(axis=1)
    g_off = np.concatenate(([0], np.cumsum(level_totals)))
    base = np.cumsum(sizes, axis=1) - sizes  # start of each ball's run per level
    parent_parts: list[np.ndarray] = []
    owner_parts: list[np.ndarray] = []
    for k in range(depth):
        for bi, b in enumerate(balls):
            s = int(sizes[k, bi])
            if s == 0:
                continue
            lo = int(b.offsets[k])
            if k == 0:
                parent_parts.append(np.full(s, -1, dtype=np.int64))
            else:
                local = b.parent[lo : lo + s] - int(b.offsets[k - 1])
                parent_parts.append(local + int(g_off[k - 1]) + int(base[k - 1, bi]))
            owner_parts.append(np.full(s, bi, dtype=np.int64))
    return LeveledForest(
        np.concatenate(parent_parts), g_off, np.concatenate(owner_parts)
    )


def _ball_forests(
    g: Graph, r: int, cap: int, vertices: list[int], node_budget: int = _NODE_BUDGET
) -> tuple[list[tuple[np.ndarray, LeveledForest]], list[int]]:
    """Per-vertex balls merged into budget-sized owner forests.

    Returns ([(vertex ids, forest), ...], capped vertices). Vertices whose
    ball alone exceeds the cap are excluded and reported, not fatal here.
    """
    built: list[tuple[int, UnraveledBall]] = []
    capped: list[int] = []
    for v in vertices:
        try:
            built.append((v, unraveled_ball(g, v, r, cap)))
        except CapExceeded:
            capped.append(v)
    out = []
    group: list[tuple[int, UnraveledBall]] = []
    total = 0
    for v, b in built:
        group.append((v, b))
        total += b.node_count
        if total >= node_budget:
            out.append(group)
            group, total = [], 0
    if group:
        out.append(group)
    forests = []
    for grp in out:
        vids = np.asarray([v for v, _ in grp], dtype=np.int64)
        forests.append((vids, _merge_balls([b for _, b in grp])))
    return forests, capped


@dataclass(frozen=True)
class UnravelSurvey:
    """Outcome of maximizing the unraveled-ball spectral radius over centers.

    When crossed is True the search stopped at the first ball certified above
    stop_above (witness is the smallest such vertex id and [lo, hi] is only a
    coarse bracket); otherwise witness attains the maximum and hi - lo <= tol.
    """

    witness: int
    lo: float
    hi: float
    crossed: bool
    capped: tuple[int, ...]

    @property
    def value(self) -> float:
        return 0.5 * (self.lo + self.hi)


def max_unraveled_survey(
    g: Graph,
    r: int,
    tol: float = 1e-10,
    cap: int = DEFAULT_BALL_CAP,
    stop_above: float | None = None,
    vertices: list[int] | None = None,
) -> UnravelSurvey:
    """Maximize lambda_1 of the unraveled ball over centers.

    In a regular graph every walk meets the same degrees, so all unraveled
    balls are one tree and a single solve settles the sweep. stop_above short
    circuits as soon as any ball provably exceeds it (a single Sturm count
    per forest instead of a full bisection).
    """
    if g.vertex_count == 0:
        raise GraphError("survey of the empty graph")
    verts = sorted(set(vertices)) if vertices is not None else list(range(g.vertex_count))
    if not verts:
        raise GraphError("no vertices to survey")
    if g.is_regular() is not None:
        b = unraveled_ball(g, verts[0], r, cap)
        lf = b.forest()
        if stop_above is not None and eigencount_above(lf, stop_above) >= 1:
            return UnravelSurvey(verts[0], float(stop_above), lf.degree_bound(), True, ())
        lo, hi = max_eigenvalue(lf, tol)
        return UnravelSurvey(verts[0], lo, hi, False, ())
    forests, capped = _ball_forests(g, r, cap, verts)
    if not forests:
        raise CapExceeded(f"every unraveled ball exceeded cap {cap}", 0)
    if stop_above is not None:
        bound = float(max(1, int(g.degrees().max(initial=0))))
        for vids, lf in forests:
            counts = eigencount_above_by_owner(
                lf, np.full(vids.size, float(stop_above)), vids.size
            )
            hit = np.flatnonzero(counts >= 1)
            if hit.size:
                return UnravelSurvey(
                    int(vids[hit[0]]), float(stop_above), bound, True, tuple(capped)
                )
    best: tuple[float, float, int] | None = None
    for vids, lf in forests:
        lo, hi, widx = max_eigenvalue_with_owner(lf, vids.size, tol)
        if best is None or lo > best[0]:
            best = (lo, hi, int(vids[widx]))
    return UnravelSurvey(best[2], best[0], best[1], False, tuple(capped))


def find_max_unraveled_vertex(
    g: Graph, r: int, tol: float = 1e-10, cap: int = DEFAULT_BALL_CAP
) -> tuple[int, float]:
    """Argmax over v of lambda_1(unraveled ball at v), smallest id on ties."""
    s = max_unraveled_survey(g, r, tol=tol, cap=cap)
    if s.capped:
        raise CapExceeded(
            f"unraveled balls exceed cap {cap} at vertices {list(s.capped)}", 0
        )
    return s.witness, s.value


def unraveled_ball_values(
    g: Graph,
    r: int,
    tol: float = 1e-10,
    cap: int = DEFAULT_BALL_CAP,
    vertices: list[int] | None = None,
) -> tuple[dict[int, tuple[float, float]], tuple[int, ...]]:
    """Per-vertex brackets on lambda_1 of the unraveled ball.

    Returns ({v: (lo, hi)}, capped). Regular graphs are solved once.
    """
    verts = sorted(set(vertices)) if vertices is not None else list(range(g.vertex_count))
    if not verts:
        return {}, ()
    if g.is_regular() is not None:
        lo, hi = max_eigenvalue(unraveled_ball(g, verts[0], r, cap).forest(), tol)
        return {v: (lo, hi) for v in verts}, ()
    forests, capped = _ball_forests(g, r, cap, verts)
    values: dict[int, tuple[float, float]] = {}
    for vids, lf in forests:
        lo, hi = max_eigenvalue_by_owner(lf, vids.size, tol)
        for j, v in enumerate(vids):
            values[int(v)] = (float(lo[j]), float(hi[j]))
    return values, tuple(capped)


@dataclass(frozen=True, eq=False)
class WalkForest:
    """Forest of all non-backtracking walks of length 1..r+1, by metadata.

    Components are regenerated from their root edges on demand, so memory
    follows the chunk being processed rather than the whole forest. exact
    says whether every probability denominator |W_1| * prod(d - 1) stays
    below 2^53 and hence is carried exactly in float64; otherwise consumers
    work in log-space.
    """

    graph: Graph
    r: int
    tails: np.ndarray
    heads: np.ndarray
    level_sizes: tuple[int, ...]
    node_count: int
    exact: bool
    denominator_bound: float

    @property
    def root_count(self) -> int:
        return int(self.tails.size)

    def roots(self) -> np.ndarray:
        return np.stack([self.tails, self.heads], axis=1)

    def _root_chunks(self, node_budget: int = _NODE_BUDGET) -> list[np.ndarray]:
        pieces = max(1, -(-self.node_count // node_budget))
        pieces = min(pieces, self.root_count)
        return np.array_split(np.arange(self.root_count, dtype=np.int64), pieces)

    def level_probability_sums(self) -> list[float]:
        """Sum of p(w) per level; each should be 1 up to rounding."""
        g, r = self.graph, self.r
        indptr, indices = g.csr()
        deg = g.degrees()
        branch = (deg - 1).astype(np.float64)
        sums = np.zeros(r + 1, dtype=np.float64)
        for ridx in self._root_chunks():
            term, prev = self.heads[ridx], self.tails[ridx]
            inv = np.full(ridx.size, 1.0 / self.root_count)
            sums[0] += float(inv.sum())
            for i in range(1, r + 1):
                row, child = _extend(indptr, indices, deg, term, prev)
                if child.size == 0:
                    break
                inv = inv[row] / branch[term[row]]
                sums[i] += float(inv.sum())
                prev, term = term[row], child
        return [float(s) for s in sums]


def build_walk_forest(
    g: Graph, r: int, cap: int = DEFAULT_FOREST_CAP, mode: str = "auto"
) -> WalkForest:
    """Size the walk forest of radius r and fix its arithmetic mode.

    Level sizes follow the directed-edge transfer c'[(v,w)] = sum of c over
    edges into v minus the reverse edge, so the cap is enforced before any
    walk is materialized. mode picks the probability representation: exact
    float64-integer denominators, log-space, or auto by the denominator
    bound.
    """
    if mode not in ("auto", "exact", "log"):
        raise GraphError(f"unknown mode {mode!r}")
    if g.vertex_count == 0:
        raise GraphError("walk forest of the empty graph")
    stats = g.degree_stats()
    if stats.min_degree < 2:
        raise GraphError("walk forest requires minimum degree >= 2")
    if r < 0:
        raise GraphError("radius must be nonnegative")
    n = g.vertex_count
    indptr, indices = g.csr()
    deg = g.degrees()
    tails = np.repeat(np.arange(n, dtype=np.int64), deg)
    heads = indices.astype(np.int64, copy=True)
    w1 = int(tails.size)
    key = tails * n + heads  # lex order over directed edges
    rev = np.searchsorted(key, heads * n + tails)
    sizes = [w1]
    total = w1
    if total > cap:
        raise CapExceeded(f"walk forest exceeds cap {cap} at level 1", 0)
    c = np.ones(w1, dtype=np.int64)
    for i in range(2, r + 2):
        s = np.zeros(n, dtype=np.int64)
        np.add.at(s, heads, c)
        c = s[tails] - c[rev]
        lvl = int(c.sum())
        sizes.append(lvl)
        if total + lvl > cap:
            raise CapExceeded(f"walk forest exceeds cap {cap} at level {i}", total)
        total += lvl
    # conservative denominator bound: per-edge max over incoming, not excluding
    # the reverse edge, so it can only overestimate
    m = np.full(w1, float(w1))
    bound = float(w1)
    branch = (deg - 1).astype(np.float64)
    for _ in range(r):
        t = np.zeros(n, dtype=np.float64)
        np.maximum.at(t, heads, m)
        m = branch[tails] * t[tails]
        if m.size:
            bound = max(bound, float(m.max()))
    if mode == "exact" and bound > _EXACT_DENOMINATOR_LIMIT:
        raise GraphError(
            f"denominator bound {bound:.3g} too large for exact float64 carrying"
        )
    exact = mode == "exact" or (mode == "auto" and bound <= _EXACT_DENOMINATOR_LIMIT)
    return WalkForest(g, int(r), tails, heads, tuple(sizes), total, exact, bound)


def test_vector_rayleigh(forest: WalkForest, node_budget: int = _NODE_BUDGET) -> float:
    """Rayleigh quotient of the test vector f(w) = x_i sqrt(p(w)) on the forest.

    The forest adjacency pairs each walk with its one-step extensions, so
    <f, Af> = sum over levels i >= 2 of 2 x_{i-1} x_i sum_w sqrt(p(w-) p(w)),
    and <f, f> telescopes level by level. Terms are all positive; summation
    order is fixed by the chunking.
    """
    g, r = forest.graph, forest.r
    indptr, indices = g.csr()
    deg = g.degrees()
    branch = (deg - 1).astype(np.float64)
    x = np.sin(np.arange(1, r + 2) * math.pi / (r + 2))
    num = 0.0
    den = 0.0
    w1 = float(forest.root_count)
    for ridx in forest._root_chunks(node_budget):
        term, prev = forest.heads[ridx], forest.tails[ridx]
        if forest.exact:
            d_cur = np.full(ridx.size, w1)
            den += x[0] ** 2 * float(np.sum(1.0 / d_cur))
        else:
            l_cur = np.full(ridx.size, math.log(w1))
            den += x[0] ** 2 * float(np.sum(np.exp(-l_cur)))
        for i in range(2, r + 2):
            row, child = _extend(indptr, indices, deg, term, prev)
            if child.size == 0:
                break
            if forest.exact:
                d_par = d_cur[row]
                d_cur = d_par * branch[term[row]]
                num += 2.0 * x[i - 2] * x[i - 1] * float(np.sum(1.0 / np.sqrt(d_par * d_cur)))
                den += x[i - 1] ** 2 * float(np.sum(1.0 / d_cur))
            else:
                l_par = l_cur[row]
                l_cur = l_par + np.log(branch[term[row]])
                num += 2.0 * x[i - 2] * x[i - 1] * float(np.sum(np.exp(-0.5 * (l_par + l_cur))))
                den += x[i - 1] ** 2 * float(np.sum(np.exp(-l_cur)))
            prev, term = term[row], child
    return num / den


def forest_spectral_radius(
    forest: WalkForest, tol: float = 1e-10, node_budget: int = _NODE_BUDGET
) -> tuple[float, tuple[int, int]]:
    """Max component spectral radius and its root edge, smallest edge on ties."""
    g, r = forest.graph, forest.r
    indptr, indices = g.csr()
    deg = g.degrees()
    best: tuple[float, float, int] | None = None
    for ridx in forest._root_chunks(node_budget):
        term = forest.heads[ridx]
        prev = forest.tails[ridx]
        parents = [np.full(ridx.size, -1, dtype=np.int64)]
        owners = [np.arange(ridx.size, dtype=np.int64)]
        offsets = [0, int(ridx.size)]
        ids = np.arange(ridx.size, dtype=np.int64)
        own = owners[0]
        for _ in range(r):
            row, child = _extend(indptr, indices, deg, term, prev)
            if child.size == 0:
                break
            parents.append(ids[row])
            owners.append(own[row])
            prev, term, own = term[row], child, own[row]
            ids = np.arange(offsets[-1], offsets[-1] + child.size, dtype=np.int64)
            offsets.append(offsets[-1] + int(child.size))
        lf = LeveledForest(
            np.concatenate(parents),
            np.asarray(offsets, dtype=np.int64),
            np.concatenate(owners),
        )
        lo, hi, widx = max_eigenvalue_with_owner(lf, ridx.size, tol)
        if best is None or lo > best[0]:
            best = (lo, hi, int(ridx[widx]))
    lo, hi, root = best
    witness = (int(forest.tails[root]), int(forest.heads[root]))
    return 0.5 * (lo + hi), witness


def component_walks(
    g: Graph, e: tuple[int, int], r: int, cap: int = DEFAULT_BALL_CAP
) -> list[list[tuple[tuple[int, ...], Fraction]]]:
    """The component T_e materialized with exact rational probabilities.

    levels[i-1] lists (walk, p(w)) over W_i within the component. Small-scale
    companion to the float machinery; sums of p over a full level across all
    components are exactly 1.
    """
    u, v = int(e[0]), int(e[1])
    g._check_vertex(u)
    if v not in g.neighbors(u):
        raise GraphError(f"({u}, {v}) is not a directed edge")
    w1 = 2 * g.edge_count
    levels = [[((u, v), Fraction(1, w1))]]
    count = 1
    for _ in range(r):
        nxt: list[tuple[tuple[int, ...], Fraction]] = []
        for walk, p in levels[-1]:
            t, s = walk[-1], walk[-2]
            fanout = g.degree(t) - 1
            for w in g.neighbors(t):
                if w != s:
                    nxt.append((walk + (w,), p / fanout))
        if not nxt:
            break
        count += len(nxt)
        if count > cap:
            raise CapExceeded(f"component at {e} exceeds cap {cap}", count - len(nxt))
        levels.append(nxt)
    return levels


def component_embedding(
    g: Graph, e: tuple[int, int], r: int, cap: int = DEFAULT_BALL_CAP
) -> dict[tuple[int, ...], tuple[int, ...]]:
    """Identify T_e with a subtree of the unraveled ball at e's head.

    The map drops the initial vertex: (v0, v1, ..., vi) -> (v1, ..., vi),
    landing on walks from v1 of length <= r. It is injective (v0 is fixed
    across the component) and parent-child pairs map to parent-child pairs.
    """
    levels = component_walks(g, e, r, cap)
    targets = set(enumerate_nb_walks(g, int(e[1]), r, cap))
    out: dict[tuple[int, ...], tuple[int, ...]] = {}
    for level in levels:
        for walk, _ in level:
            image = walk[1:]
            if image not in targets:
                raise GraphError(f"image {image} is not a walk of the ball at {e[1]}")
            out[walk] = image
    return out


def closed_walk_injection_check(
    g: Graph, v: int, r: int, max_length: int, cap: int = 5000
) -> bool:
    """Exact check that the ball dominates the unraveled ball in closed walks.

    Every closed walk at the root of the unraveled ball projects to a closed
    walk at v inside G(v, r), injectively; so s_k(v; ball) >= s_k(root; tree)
    for every k. Verified here by exact integer counts on both sides.
    """
    tree = unraveled_ball(g, v, r, cap)
    members = sorted(ball(g, v, r))
    sub, ids = induced_subgraph(g, members)
    s_ball = closed_walk_counts(sub, ids.index(v), max_length)
    s_tree = closed_walk_counts(tree.as_graph(), 0, max_length)
    return all(s_ball[k] >= s_tree[k] for k in range(max_length + 1))
