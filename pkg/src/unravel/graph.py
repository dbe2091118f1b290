"""Undirected simple graphs with exact degree statistics and ball operations.

Graphs are immutable once built: adjacency lists are sorted tuples and the
derived structures (degree array, CSR form, sparse matrix) are cached lazily.
Average degrees are kept as exact fractions so that downstream hypothesis
checks of the form "average degree >= d" never fail from rounding.
"""
from __future__ import annotations

import json
import math
import re
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np
import scipy.sparse as sp


class GraphError(ValueError):
    """Raised for malformed graph data or out-of-range arguments."""


@dataclass(frozen=True)
class DegreeStats:
    min_degree: int
    max_degree: int
    average_degree: Fraction
    histogram: dict[int, int]


@dataclass(frozen=True)
class RobustProfile:
    """Minimum post-deletion average degree over all ball centers."""

    value: Fraction
    witness: int | None     # center attaining the minimum, smallest id on ties
    empties: bool           # some deletion removed every vertex


class Graph:
    """Immutable simple undirected graph on vertices 0..n-1."""

    __slots__ = ("_adj", "_m", "_cache")

    def __init__(self, adjacency: Sequence[Sequence[int]], *, _trusted: bool = False):
        if _trusted:
            adj = tuple(tuple(ns) for ns in adjacency)
        else:
            adj = self._validated(adjacency)
        self._adj = adj
        self._m = sum(len(ns) for ns in adj) // 2
        self._cache = {}

    @staticmethod
    def _validated(adjacency) -> tuple[tuple[int, ...], ...]:
        n = len(adjacency)
        rows = []
        for v, ns in enumerate(adjacency):
            ns = tuple(sorted(int(u) for u in ns))
            for i, u in enumerate(ns):
                if u < 0 or u >= n:
                    raise GraphError(f"vertex {v}: neighbor {u} out of range")
                if u == v:
                    raise GraphError(f"self-loop at vertex {v}")
                if i > 0 and ns[i - 1] == u:
                    raise GraphError(f"duplicate edge ({v}, {u})")
            rows.append(ns)
        for v, ns in enumerate(rows):
            for u in ns:
                if v not in rows[u]:
                    raise GraphError(f"asymmetric adjacency: ({v}, {u}) has no mirror")
        return tuple(rows)

    @classmethod
    def from_edges(cls, vertex_count: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if vertex_count < 0:
            raise GraphError("vertex_count must be nonnegative")
        adj: list[list[int]] = [[] for _ in range(vertex_count)]
        seen = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise GraphError(f"edge ({u}, {v}) out of range")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise GraphError(f"duplicate edge {key}")
            seen.add(key)
            adj[u].append(v)
            adj[v].append(u)
        return cls([sorted(ns) for ns in adj], _trusted=True)

    # -- basic accessors ----------------------------------------------------

    @property
    def vertex_count(self) -> int:
        return len(self._adj)

    @property
    def edge_count(self) -> int:
        return self._m

    @property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        return self._adj

    def neighbors(self, v: int) -> tuple[int, ...]:
        self._check_vertex(v)
        return self._adj[v]

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return len(self._adj[v])

    def degrees(self) -> np.ndarray:
        if "deg" not in self._cache:
            self._cache["deg"] = np.array([len(ns) for ns in self._adj], dtype=np.int64)
        return self._cache["deg"]

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, ns in enumerate(self._adj):
            for v in ns:
                if u < v:
                    yield (u, v)

    def directed_edges(self) -> list[tuple[int, int]]:
        """All 2|E| oriented edges in lexicographic order."""
        return [(u, v) for u, ns in enumerate(self._adj) for v in ns]

    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """(indptr, indices) arrays of the sorted adjacency structure."""
        if "csr" not in self._cache:
            deg = self.degrees()
            indptr = np.zeros(self.vertex_count + 1, dtype=np.int64)
            np.cumsum(deg, out=indptr[1:])
            indices = np.fromiter(
                (v for ns in self._adj for v in ns), dtype=np.int64, count=2 * self._m
            )
            self._cache["csr"] = (indptr, indices)
        return self._cache["csr"]

    def sparse(self) -> sp.csr_array:
        if "sparse" not in self._cache:
            indptr, indices = self.csr()
            data = np.ones(indices.size, dtype=np.float64)
            self._cache["sparse"] = sp.csr_array(
                (data, indices.copy(), indptr.copy()),
                shape=(self.vertex_count, self.vertex_count),
            )
        return self._cache["sparse"]

    def dense(self) -> np.ndarray:
        a = np.zeros((self.vertex_count, self.vertex_count), dtype=np.float64)
        for u, ns in enumerate(self._adj):
            a[u, list(ns)] = 1.0
        return a

    def degree_stats(self) -> DegreeStats:
        n = self.vertex_count
        if n == 0:
            # convention: the empty graph has average degree 0
            return DegreeStats(0, 0, Fraction(0), {})
        deg = [len(ns) for ns in self._adj]
        hist: dict[int, int] = {}
        for d in deg:
            hist[d] = hist.get(d, 0) + 1
        return DegreeStats(min(deg), max(deg), Fraction(2 * self._m, n), dict(sorted(hist.items())))

    def is_regular(self) -> int | None:
        """Common degree if the graph is regular, else None."""
        if self.vertex_count == 0:
            return 0
        d = len(self._adj[0])
        return d if all(len(ns) == d for ns in self._adj) else None

    def _check_vertex(self, v: int) -> None:
        if not (0 <= v < self.vertex_count):
            raise GraphError(f"vertex {v} out of range for {self.vertex_count} vertices")

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self._adj == other._adj

    def __hash__(self):
        return hash(self._adj)

    def __repr__(self) -> str:
        return f"Graph(n={self.vertex_count}, m={self.edge_count})"

    def __getstate__(self):
        return self._adj

    def __setstate__(self, state):
        self._adj = state
        self._m = sum(len(ns) for ns in state) // 2
        self._cache = {}

    # -- serialization ------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "schema_version": 1,
            "vertex_count": self.vertex_count,
            "edge_count": self.edge_count,
            "adjacency": [list(ns) for ns in self._adj],
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "Graph":
        try:
            adjacency = obj["adjacency"]
            n = int(obj["vertex_count"])
        except (KeyError, TypeError) as exc:
            raise GraphError(f"malformed graph JSON: {exc}") from exc
        if len(adjacency) != n:
            raise GraphError("vertex_count does not match adjacency length")
        g = cls(adjacency)
        if "edge_count" in obj and int(obj["edge_count"]) != g.edge_count:
            raise GraphError("edge_count does not match adjacency")
        return g


def average_degree(g: Graph) -> Fraction:
    """Exact average degree, 0 for the empty graph."""
    if g.vertex_count == 0:
        return Fraction(0)
    return Fraction(2 * g.edge_count, g.vertex_count)


def ball(g: Graph, v: int, r: int) -> set[int]:
    """Vertices at distance at most r from v."""
    g._check_vertex(v)
    if r < 0:
        raise GraphError("radius must be nonnegative")
    adj = g.adjacency
    seen = {v}
    frontier = [v]
    for _ in range(r):
        nxt = []
        for u in frontier:
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        if not nxt:
            break
        frontier = nxt
    return seen


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Subgraph on the given vertex set, plus the new-id -> old-id map."""
    keep = sorted(set(int(v) for v in vertices))
    for v in keep:
        g._check_vertex(v)
    index = {old: new for new, old in enumerate(keep)}
    adj = [
        tuple(index[u] for u in g.adjacency[old] if u in index)
        for old in keep
    ]
    return Graph(adj, _trusted=True), tuple(keep)


def delete_ball(g: Graph, v: int, r: int) -> tuple[Graph, tuple[int, ...]]:
    """Graph induced on the complement of ball(g, v, r), with id map."""
    inside = ball(g, v, r)
    outside = [u for u in range(g.vertex_count) if u not in inside]
    return induced_subgraph(g, outside)


def robust_profile(g: Graph, r: int) -> RobustProfile:
    """Min over centers v of the average degree after deleting ball(v, r).

    Works on degree sums rather than materialized subgraphs; a deletion that
    empties the graph contributes average degree 0 by convention.
    """
    n = g.vertex_count
    if n == 0:
        return RobustProfile(Fraction(0), None, True)
    if r < 0:
        raise GraphError("radius must be nonnegative")
    adj = g.adjacency
    m = g.edge_count
    stamp = [-1] * n
    best: Fraction | None = None
    witness = None
    empties = False
    for v in range(n):
        members = [v]
        stamp[v] = v
        frontier = [v]
        for _ in range(r):
            nxt = []
            for u in frontier:
                for w in adj[u]:
                    if stamp[w] != v:
                        stamp[w] = v
                        nxt.append(w)
            if not nxt:
                break
            frontier = nxt
            members.extend(nxt)
        outside = n - len(members)
        if outside == 0:
            avg = Fraction(0)
            empties = True
        else:
            deg_sum = 0
            inside_twice = 0
            for u in members:
                deg_sum += len(adj[u])
                for w in adj[u]:
                    if stamp[w] == v:
                        inside_twice += 1
            incident = deg_sum - inside_twice // 2
            avg = Fraction(2 * (m - incident), outside)
        if best is None or avg < best:
            best = avg
            witness = v
    assert best is not None
    return RobustProfile(best, witness, empties)


def robust_average_degree(g: Graph, r: int) -> Fraction:
    """The r-robust average degree: min_v avg-degree of G minus ball(v, r)."""
    return robust_profile(g, r).value


def strip_leaves(g: Graph) -> tuple[Graph, tuple[int, ...]]:
    """Repeatedly delete vertices of degree <= 1 until min degree >= 2 or empty.

    Returns the stripped graph and the surviving original vertex ids.
    """
    cur = g
    ids = tuple(range(g.vertex_count))
    while cur.vertex_count > 0:
        keep = [v for v in range(cur.vertex_count) if len(cur.adjacency[v]) > 1]
        if len(keep) == cur.vertex_count:
            break
        cur, sub_ids = induced_subgraph(cur, keep)
        ids = tuple(ids[i] for i in sub_ids)
    return cur, ids


def connected_components(g: Graph) -> list[list[int]]:
    """Components as sorted vertex lists, ordered by smallest member."""
    n = g.vertex_count
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adjacency[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comp.sort()
        comps.append(comp)
    return comps


def distance(g: Graph, u: int, v: int) -> int | float:
    """BFS distance between u and v; math.inf when disconnected."""
    g._check_vertex(u)
    g._check_vertex(v)
    if u == v:
        return 0
    dist = {u: 0}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        for w in g.adjacency[x]:
            if w not in dist:
                dist[w] = dist[x] + 1
                if w == v:
                    return dist[w]
                queue.append(w)
    return math.inf


# -- file formats ------------------------------------------------------------

_VERTICES_RE = re.compile(r"#\s*vertices\s*:\s*(\d+)")


def save_edge_list(g: Graph, path: str | Path) -> None:
    lines = [f"# vertices: {g.vertex_count}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_edge_list(path: str | Path) -> Graph:
    """Parse a "u v" per line edge file; '#' starts a comment.

    A "# vertices: N" comment pins the vertex count (needed to keep isolated
    vertices); otherwise the count is inferred as max id + 1.
    """
    text = Path(path).read_text(encoding="utf-8")
    vertex_count = None
    edges = []
    max_id = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            m = _VERTICES_RE.match(line)
            if m:
                vertex_count = int(m.group(1))
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphError(f"{path}:{lineno}: expected 'u v', got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise GraphError(f"{path}:{lineno}: non-integer vertex id") from exc
        if u < 0 or v < 0:
            raise GraphError(f"{path}:{lineno}: negative vertex id")
        edges.append((u, v))
        max_id = max(max_id, u, v)
    n = vertex_count if vertex_count is not None else max_id + 1
    try:
        return Graph.from_edges(n, edges)
    except GraphError as exc:
        raise GraphError(f"{path}: {exc}") from exc


def save_json(g: Graph, path: str | Path) -> None:
    Path(path).write_text(json.dumps(g.to_json_dict(), indent=2) + "\n", encoding="utf-8")


def load_json(path: str | Path) -> Graph:
    try:
        obj = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise GraphError(f"{path}: invalid JSON: {exc}") from exc
    return Graph.from_json_dict(obj)


def load_graph(path: str | Path) -> Graph:
    """Dispatch on extension: .json uses the JSON format, anything else edge list."""
    p = Path(path)
    if p.suffix == ".json":
        return load_json(p)
    return load_edge_list(p)
