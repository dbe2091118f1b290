"""Eigenvalue location for forests via Sturm counts on leveled parent arrays.

For a tree, LDL^T elimination of A - xI in leaf-to-root order gives pivots
whose signs read off the inertia: the number of pivots above/at/below zero
equals the number of eigenvalues above/at/below x. Zero pivots are handled
with the classic repair: when a child pivot is exactly 0, the parent's pivot
becomes -1/2, one such child is recorded as +2, and the parent's edge to its
own parent is cut. Counting at bisection midpoints then pins the largest
eigenvalue of a forest, or of every component at once, to any tolerance.

Nodes must be stored level-contiguously with parents one level up, which lets
every elimination step run as a vectorized segment sum over one level.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph


@dataclass(frozen=True)
class LeveledForest:
    """Rooted forest in BFS layout: parent[i] < i, -1 at roots.

    offsets[k]:offsets[k+1] slices the nodes at depth k; every child sits
    exactly one level below its parent. owner optionally tags each node with
    the component/query id it belongs to, for grouped eigenvalue counts.
    """

    parent: np.ndarray
    offsets: np.ndarray
    owner: np.ndarray | None = None

    @property
    def node_count(self) -> int:
        return int(self.parent.size)

    @property
    def depth_count(self) -> int:
        return int(self.offsets.size - 1)

    def validate(self) -> None:
        n = self.node_count
        assert self.offsets[0] == 0 and self.offsets[-1] == n
        for k in range(self.depth_count):
            a, b = self.offsets[k], self.offsets[k + 1]
            p = self.parent[a:b]
            if k == 0:
                assert np.all(p == -1)
            else:
                pa, pb = self.offsets[k - 1], self.offsets[k]
                assert np.all((p >= pa) & (p < pb))

    def degree_bound(self) -> float:
        """Max degree of the forest, a hard upper bound for its eigenvalues."""
        n = self.node_count
        if n == 0:
            return 0.0
        child_counts = np.bincount(self.parent[self.parent >= 0], minlength=n)
        deg = child_counts + (self.parent >= 0)
        return float(deg.max(initial=0))

    def as_graph(self) -> Graph:
        edges = [(int(self.parent[i]), i) for i in range(self.node_count) if self.parent[i] >= 0]
        return Graph.from_edges(self.node_count, edges)


def _pivots(forest: LeveledForest, x) -> np.ndarray:
    """Elimination pivots of A - xI; x is a scalar or a per-node array."""
    n = forest.node_count
    parent, offsets = forest.parent, forest.offsets
    levels = forest.depth_count
    d = np.empty(n, dtype=np.float64)
    detached = np.zeros(n, dtype=bool)
    x_is_array = isinstance(x, np.ndarray)
    for k in range(levels - 1, -1, -1):
        a, b = int(offsets[k]), int(offsets[k + 1])
        if a == b:
            continue
        base = -(x[a:b] if x_is_array else np.full(b - a, x))
        if k == levels - 1 or offsets[k + 2] == offsets[k + 1]:
            d[a:b] = base
            continue
        ca, cb = int(offsets[k + 1]), int(offsets[k + 2])
        dc = d[ca:cb]
        pc = (parent[ca:cb] - a).astype(np.int64)
        dead = detached[ca:cb]
        zero = (dc == 0.0) & ~dead
        skip = zero | dead
        contrib = np.where(skip, 0.0, 1.0 / np.where(skip, 1.0, dc))
        vals = base - np.bincount(pc, weights=contrib, minlength=b - a)
        zp = pc[zero]
        if zp.size:
            has_zero = np.zeros(b - a, dtype=bool)
            has_zero[zp] = True
            vals[has_zero] = -0.5
            detached[a:b] |= has_zero
            # flip the first zero child of each such parent to a +2 pivot
            zidx = np.flatnonzero(zero) + ca
            _, first = np.unique(zp, return_index=True)
            d[zidx[first]] = 2.0
        d[a:b] = vals
    return d


def eigencount_above(forest: LeveledForest, x: float) -> int:
    """Number of adjacency eigenvalues of the forest strictly above x."""
    if forest.node_count == 0:
        return 0
    return int(np.count_nonzero(_pivots(forest, float(x)) > 0.0))


def eigencount_above_by_owner(
    forest: LeveledForest, x_by_owner: np.ndarray, owner_count: int
) -> np.ndarray:
    """Per-owner count of eigenvalues strictly above that owner's threshold."""
    assert forest.owner is not None
    if forest.node_count == 0:
        return np.zeros(owner_count, dtype=np.int64)
    x_node = x_by_owner[forest.owner]
    d = _pivots(forest, x_node)
    return np.bincount(forest.owner[d > 0.0], minlength=owner_count)


def max_eigenvalue(forest: LeveledForest, tol: float = 1e-11) -> tuple[float, float]:
    """Bracket [lo, hi] with hi - lo <= tol containing the largest eigenvalue."""
    if forest.node_count == 0:
        return (0.0, 0.0)
    if eigencount_above(forest, 0.0) == 0:
        # adjacency spectra are symmetric enough here: no edges means all zeros
        return (0.0, 0.0)
    lo, hi = 0.0, max(1.0, forest.degree_bound())
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if eigencount_above(forest, mid) >= 1:
            lo = mid
        else:
            hi = mid
    return (lo, hi)


def max_eigenvalue_by_owner(
    forest: LeveledForest, owner_count: int, tol: float = 1e-11
) -> tuple[np.ndarray, np.ndarray]:
    """Per-owner largest-eigenvalue brackets, bisected simultaneously."""
    assert forest.owner is not None
    lo = np.zeros(owner_count, dtype=np.float64)
    hi = np.full(owner_count, max(1.0, forest.degree_bound()), dtype=np.float64)
    have_any = eigencount_above_by_owner(forest, lo, owner_count) >= 1
    hi[~have_any] = 0.0
    if not have_any.any():
        return lo, hi
    span = float(hi.max(initial=0.0))
    steps = max(1, int(np.ceil(np.log2(max(span, tol) / tol))))
    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        counts = eigencount_above_by_owner(forest, mid, owner_count)
        up = (counts >= 1) & have_any
        lo = np.where(up, mid, lo)
        hi = np.where(up | ~have_any, hi, mid)
    return lo, hi


def max_eigenvalue_with_owner(
    forest: LeveledForest, owner_count: int, tol: float = 1e-11
) -> tuple[float, float, int]:
    """Forest-wide max eigenvalue and the smallest owner id attaining it.

    Attainment is read at the final lower bisection bound, so owners whose
    top eigenvalue ties the maximum within tol are eligible; the smallest id
    among them wins.
    """
    assert forest.owner is not None
    lo, hi = max_eigenvalue(forest, tol)
    if lo == 0.0 and hi == 0.0:
        return 0.0, 0.0, 0
    x = np.full(owner_count, lo, dtype=np.float64)
    counts = eigencount_above_by_owner(forest, x, owner_count)
    attaining = np.flatnonzero(counts >= 1)
    winner = int(attaining[0]) if attaining.size else 0
    return lo, hi, winner
