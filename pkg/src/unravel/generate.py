"""Seeded graph family constructors for reproducible corpora.

Every random family draws from a counter-based Philox generator keyed by a
hash of (family, params, seed), so the same spec always yields the same edge
set regardless of generation order elsewhere in a run.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .graph import Graph, GraphError


class GenerationError(RuntimeError):
    """Raised when a randomized construction exhausts its retry budget."""


# d=5 pairings collide a lot (simple-graph odds ~1/700 at n=20), so the retry
# budget has to be generous; typical draws still finish in well under a second
_PAIRING_ATTEMPTS = 50000

FAMILIES = (
    "path",
    "cycle",
    "complete",
    "complete_bipartite",
    "star",
    "d_regular_tree",
    "random_regular",
    "erdos_renyi",
    "random_tree",
)

# required parameter names per family
_FAMILY_PARAMS: dict[str, tuple[str, ...]] = {
    "path": ("n",),
    "cycle": ("n",),
    "complete": ("n",),
    "complete_bipartite": ("a", "b"),
    "star": ("k",),
    "d_regular_tree": ("d", "depth"),
    "random_regular": ("n", "d"),
    "erdos_renyi": ("n", "p"),
    "random_tree": ("n",),
}


@dataclass(frozen=True)
class GenSpec:
    """A graph family name, its parameters, and a seed."""

    family: str
    params: tuple[tuple[str, int | float], ...]
    seed: int = 0

    def __init__(self, family: str, params: Mapping[str, int | float], seed: int = 0):
        object.__setattr__(self, "family", family)
        object.__setattr__(self, "params", tuple(sorted(params.items())))
        object.__setattr__(self, "seed", int(seed))
        self.validate()

    def validate(self) -> None:
        if self.family not in FAMILIES:
            raise GraphError(f"unknown family {self.family!r}")
        required = _FAMILY_PARAMS[self.family]
        names = tuple(k for k, _ in self.params)
        if names != tuple(sorted(required)):
            raise GraphError(
                f"{self.family} takes parameters {sorted(required)}, got {list(names)}"
            )
        p = self.param_dict()
        positive = {k: v for k, v in p.items() if k != "p"}
        if any(int(v) != v for v in positive.values()):
            raise GraphError(f"{self.family}: integer parameter expected")
        if self.family == "path" and p["n"] < 1:
            raise GraphError("path needs n >= 1")
        if self.family == "cycle" and p["n"] < 3:
            raise GraphError("cycle needs n >= 3")
        if self.family == "complete" and p["n"] < 1:
            raise GraphError("complete needs n >= 1")
        if self.family == "complete_bipartite" and (p["a"] < 1 or p["b"] < 1):
            raise GraphError("complete_bipartite needs a, b >= 1")
        if self.family == "star" and p["k"] < 1:
            raise GraphError("star needs k >= 1")
        if self.family == "d_regular_tree" and (p["d"] < 2 or p["depth"] < 0):
            raise GraphError("d_regular_tree needs d >= 2 and depth >= 0")
        if self.family == "random_regular":
            n, d = int(p["n"]), int(p["d"])
            if not (0 <= d < n) or (n * d) % 2 != 0:
                raise GraphError("random_regular needs 0 <= d < n and n*d even")
        if self.family == "erdos_renyi":
            if p["n"] < 1 or not (0.0 <= float(p["p"]) <= 1.0):
                raise GraphError("erdos_renyi needs n >= 1 and p in [0, 1]")
        if self.family == "random_tree" and p["n"] < 1:
            raise GraphError("random_tree needs n >= 1")

    def param_dict(self) -> dict[str, int | float]:
        return dict(self.params)

    def name(self) -> str:
        parts = [self.family]
        parts.extend(f"{k}{v:g}" if isinstance(v, float) else f"{k}{v}" for k, v in self.params)
        parts.append(f"s{self.seed}")
        return "-".join(parts)

    def to_json_dict(self) -> dict:
        out: dict = {"family": self.family, "seed": self.seed}
        out.update(self.param_dict())
        return out

    @classmethod
    def from_json_dict(cls, obj: Mapping) -> "GenSpec":
        obj = dict(obj)
        family = obj.pop("family")
        seed = obj.pop("seed", 0)
        return cls(family, obj, seed)


def _rng(spec: GenSpec) -> np.random.Generator:
    digest = hashlib.sha256(spec.name().encode()).digest()
    key = np.frombuffer(digest[:16], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def generate(spec: GenSpec) -> Graph:
    p = spec.param_dict()
    family = spec.family
    if family == "path":
        return path_graph(int(p["n"]))
    if family == "cycle":
        return cycle_graph(int(p["n"]))
    if family == "complete":
        return complete_graph(int(p["n"]))
    if family == "complete_bipartite":
        return complete_bipartite_graph(int(p["a"]), int(p["b"]))
    if family == "star":
        return star_graph(int(p["k"]))
    if family == "d_regular_tree":
        return d_regular_tree(int(p["d"]), int(p["depth"]))
    if family == "random_regular":
        return _random_regular(int(p["n"]), int(p["d"]), _rng(spec))
    if family == "erdos_renyi":
        return _erdos_renyi(int(p["n"]), float(p["p"]), _rng(spec))
    if family == "random_tree":
        return _random_tree(int(p["n"]), _rng(spec))
    raise GraphError(f"unknown family {family!r}")


# -- deterministic families ---------------------------------------------------

def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite_graph(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def star_graph(k: int) -> Graph:
    """Star with k leaves (k+1 vertices, center 0)."""
    return Graph.from_edges(k + 1, [(0, i) for i in range(1, k + 1)])


def d_regular_tree(d: int, depth: int) -> Graph:
    """Tree whose root has d children and interior vertices d-1, to the given depth."""
    if d < 2 or depth < 0:
        raise GraphError("d_regular_tree needs d >= 2 and depth >= 0")
    edges = []
    frontier = [0]
    next_id = 1
    for level in range(depth):
        nxt = []
        for u in frontier:
            children = d if level == 0 else d - 1
            for _ in range(children):
                edges.append((u, next_id))
                nxt.append(next_id)
                next_id += 1
        frontier = nxt
    return Graph.from_edges(next_id, edges)


def petersen() -> Graph:
    """Outer 5-cycle, inner pentagram, matched by spokes."""
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    edges += [(i, 5 + i) for i in range(5)]
    return Graph.from_edges(10, edges)


# -- randomized families ------------------------------------------------------

def _random_regular(n: int, d: int, rng: np.random.Generator) -> Graph:
    """Pairing model: shuffle n*d stubs, pair them off, reject bad attempts.

    An attempt is discarded wholesale if it creates a self-loop or repeated
    edge; after _PAIRING_ATTEMPTS rejections we give up loudly.
    """
    if d == 0:
        return Graph([[] for _ in range(n)], _trusted=True)
    stubs = np.repeat(np.arange(n, dtype=np.int64), d)
    for _ in range(_PAIRING_ATTEMPTS):
        perm = rng.permutation(stubs)
        u = perm[0::2]
        v = perm[1::2]
        if np.any(u == v):
            continue
        lo = np.minimum(u, v)
        hi = np.maximum(u, v)
        keys = lo * n + hi
        if np.unique(keys).size != keys.size:
            continue
        return Graph.from_edges(n, zip(lo.tolist(), hi.tolist()))
    raise GenerationError(
        f"pairing model failed for n={n}, d={d} after {_PAIRING_ATTEMPTS} attempts"
    )


def _erdos_renyi(n: int, p: float, rng: np.random.Generator) -> Graph:
    iu, iv = np.triu_indices(n, k=1)
    mask = rng.random(iu.size) < p
    return Graph.from_edges(n, zip(iu[mask].tolist(), iv[mask].tolist()))


def _random_tree(n: int, rng: np.random.Generator) -> Graph:
    """Uniform labeled tree via a random Pruefer sequence.

    Decode keeps a moving pointer to the smallest unused leaf; vertex n-1 is
    never consumed inside the loop, so it takes the closing edge.
    """
    if n == 1:
        return Graph([[]], _trusted=True)
    seq = rng.integers(0, n, size=n - 2).tolist()
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    index = u = next(k for k in range(n) if degree[k] == 1)
    for v in seq:
        edges.append((u, v))
        degree[v] -= 1
        if v < index and degree[v] == 1:
            u = v
        else:
            index = u = next(k for k in range(index + 1, n) if degree[k] == 1)
    edges.append((u, n - 1))
    return Graph.from_edges(n, edges)
