"""Adjacency spectra: power iteration, dense solves, and exact walk counts.

The workhorse estimator runs power iteration on A^2, which is positive
semidefinite, so bipartite sign oscillation cannot stall convergence. The
iterate is then split into a Perron candidate u with A u ~ rho u, and the
returned value is the Rayleigh quotient of u together with the residual
|A u - rho u| as a certificate. Dense eigendecompositions back the second
and smallest eigenvalue below a size threshold, with a shift-and-deflate
power scheme above it.

Closed-walk counts are exact big integers, so growth comparisons between
2k-th roots can be done by cross-multiplied integer powers with no rounding.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .graph import Graph, GraphError, connected_components, induced_subgraph

DENSE_THRESHOLD = 2048
DEFAULT_TOL = 1e-10


@dataclass(frozen=True)
class SpectralEstimate:
    value: float
    residual: float
    iterations: int
    method: str
    converged: bool = True


@dataclass(frozen=True)
class SpectrumSummary:
    lambda1: float
    lambda2: float
    lambda_min: float
    n: int


@dataclass(frozen=True)
class ClosedWalkCounts:
    origin: int
    counts: tuple[int, ...]  # counts[k] = closed walks of length k at origin

    def __getitem__(self, k: int) -> int:
        return self.counts[k]

    @property
    def max_length(self) -> int:
        return len(self.counts) - 1


def _start_vector(n: int) -> np.ndarray:
    """All-ones start with a fixed small perturbation; never orthogonal to a
    nonnegative Perron vector."""
    i = np.arange(n, dtype=np.uint64)
    h = ((i * np.uint64(2654435761)) % np.uint64(2 ** 32)).astype(np.float64)
    x = 1.0 + 1e-3 * (h / 2 ** 32 - 0.5)
    return x / np.linalg.norm(x)


def _default_max_iter(n: int) -> int:
    return int(100 * n * math.log(max(n, 2))) + 10_000


def _power_top(a: sp.csr_array, tol: float, max_iter: int):
    """Top eigenpair of a symmetric adjacency block via power iteration on A^2.

    Returns (value, vector, residual, iterations, converged); value is the
    Rayleigh quotient of the Perron candidate, hence a lower bound on the
    true top eigenvalue.
    """
    n = a.shape[0]
    if a.nnz == 0:
        e = np.zeros(n)
        if n:
            e[0] = 1.0
        return 0.0, e, 0.0, 0, True
    x = _start_vector(n)
    best = None
    it = 0
    check_every = 8
    while it < max_iter:
        for _ in range(min(check_every, max_iter - it)):
            z = a @ (a @ x)
            nz = np.linalg.norm(z)
            if nz == 0.0:
                # x fell in the kernel of A^2; restart deterministically shifted
                x = np.roll(_start_vector(n), it % max(n, 1))
                x /= np.linalg.norm(x)
                continue
            x = z / nz
            it += 1
        y = a @ x
        s = np.linalg.norm(y)
        u = y + s * x
        nu = np.linalg.norm(u)
        if nu < 1e-9:
            u = y - s * x
            nu = np.linalg.norm(u)
        if nu == 0.0:
            u, nu = x, 1.0
        u = u / nu
        au = a @ u
        rho = float(u @ au)
        res = float(np.linalg.norm(au - rho * u))
        if best is None or res < best[2]:
            best = (rho, u, res, it)
        if res <= tol:
            return rho, u, res, it, True
        check_every = min(2 * check_every, 64)
    rho, u, res, it = best
    return rho, u, res, it, False


def spectral_radius(g: Graph, tol: float = DEFAULT_TOL, max_iter: int | None = None) -> SpectralEstimate:
    """Largest adjacency eigenvalue, estimated per connected component.

    Power iteration restarts on each component and the maximum wins; the
    residual certificate belongs to the winning component.
    """
    if g.vertex_count == 0:
        raise GraphError("spectral_radius needs at least one vertex")
    best_val = 0.0
    best_res = 0.0
    total_it = 0
    all_ok = True
    for comp in connected_components(g):
        if len(comp) == 1:
            continue
        sub, _ = induced_subgraph(g, comp)
        mi = max_iter if max_iter is not None else _default_max_iter(len(comp))
        val, _, res, it, ok = _power_top(sub.sparse(), tol, mi)
        total_it += it
        if val > best_val:
            best_val, best_res = val, res
        all_ok = all_ok and ok
    return SpectralEstimate(best_val, best_res, total_it, "power", all_ok)


def dense_spectrum(g: Graph) -> np.ndarray:
    """All adjacency eigenvalues, ascending."""
    if g.vertex_count == 0:
        return np.zeros(0)
    return np.linalg.eigvalsh(g.dense())


def second_largest_eigenvalue(
    g: Graph, tol: float = DEFAULT_TOL, dense_threshold: int = DENSE_THRESHOLD
) -> float:
    """Second largest eigenvalue of the whole spectrum (multiset over components)."""
    if g.vertex_count < 2:
        raise GraphError("second_largest_eigenvalue needs at least two vertices")
    if g.vertex_count <= dense_threshold:
        w = dense_spectrum(g)
        return float(w[-2])
    return _second_largest_sparse(g, tol)


def _second_largest_sparse(g: Graph, tol: float) -> float:
    comps = connected_components(g)
    tops = []
    for ci, comp in enumerate(comps):
        if len(comp) == 1:
            tops.append((0.0, ci, None, None))
            continue
        sub, _ = induced_subgraph(g, comp)
        val, vec, _, _, _ = _power_top(sub.sparse(), tol, _default_max_iter(len(comp)))
        tops.append((val, ci, sub, vec))
    tops.sort(key=lambda t: -t[0])
    candidates = []
    if len(tops) > 1:
        candidates.append(tops[1][0])
    val0, _, sub0, vec0 = tops[0]
    if sub0 is not None:
        candidates.append(_deflated_second(sub0.sparse(), val0, vec0, tol))
    elif len(tops) == 1:
        candidates.append(0.0)  # single isolated vertex cannot happen with n >= 2
    return max(candidates)


def _deflated_second(a: sp.csr_array, lam1: float, v1: np.ndarray, tol: float) -> float:
    """Second eigenvalue of one component: power iteration on A + lam1*I with
    the top eigenvector projected out each step."""
    n = a.shape[0]
    if n < 2:
        return -math.inf
    x = _start_vector(n)
    x = x - (v1 @ x) * v1
    nx = np.linalg.norm(x)
    if nx < 1e-12:
        x = np.roll(_start_vector(n), 1)
        x = x - (v1 @ x) * v1
        nx = np.linalg.norm(x)
    x /= nx
    max_iter = _default_max_iter(n)
    rho_shift = 0.0
    for it in range(max_iter):
        y = a @ x + lam1 * x
        y = y - (v1 @ y) * v1
        ny = np.linalg.norm(y)
        if ny == 0.0:
            return -lam1  # deflated operator vanished: second eigenvalue is -lam1
        y /= ny
        by = a @ y + lam1 * y
        by = by - (v1 @ by) * v1
        rho_shift = float(y @ by)
        res = float(np.linalg.norm(by - rho_shift * y))
        x = y
        if res <= tol and it >= 8:
            break
    return rho_shift - lam1


def smallest_eigenvalue(
    g: Graph, tol: float = DEFAULT_TOL, dense_threshold: int = DENSE_THRESHOLD
) -> float:
    """Smallest adjacency eigenvalue over all components."""
    if g.vertex_count == 0:
        raise GraphError("smallest_eigenvalue needs at least one vertex")
    if g.vertex_count <= dense_threshold:
        return float(dense_spectrum(g)[0])
    out = 0.0
    for comp in connected_components(g):
        if len(comp) == 1:
            out = min(out, 0.0)
            continue
        sub, _ = induced_subgraph(g, comp)
        a = sub.sparse()
        lam1, _, _, _, _ = _power_top(a, tol, _default_max_iter(len(comp)))
        # power iteration on lam1*I - A, PSD with top eigenvalue lam1 - lambda_min
        n = a.shape[0]
        x = _start_vector(n)
        val = 0.0
        for it in range(_default_max_iter(n)):
            y = lam1 * x - a @ x
            ny = np.linalg.norm(y)
            if ny == 0.0:
                break
            y /= ny
            val = float(y @ (lam1 * y - a @ y))
            res = float(np.linalg.norm((lam1 * y - a @ y) - val * y))
            x = y
            if res <= tol and it >= 8:
                break
        out = min(out, lam1 - val)
    return out


def spectrum_summary(g: Graph, tol: float = DEFAULT_TOL, dense_threshold: int = DENSE_THRESHOLD) -> SpectrumSummary:
    if g.vertex_count < 2:
        raise GraphError("spectrum_summary needs at least two vertices")
    if g.vertex_count <= dense_threshold:
        w = dense_spectrum(g)
        return SpectrumSummary(float(w[-1]), float(w[-2]), float(w[0]), g.vertex_count)
    lam1 = spectral_radius(g, tol).value
    return SpectrumSummary(
        lam1,
        second_largest_eigenvalue(g, tol, dense_threshold),
        smallest_eigenvalue(g, tol, dense_threshold),
        g.vertex_count,
    )


def rayleigh_quotient(a, f: np.ndarray) -> float:
    """<f, A f> / <f, f> for a Graph, sparse matrix, or dense array."""
    if isinstance(a, Graph):
        a = a.sparse()
    f = np.asarray(f, dtype=np.float64)
    denom = float(f @ f)
    if denom == 0.0:
        raise GraphError("rayleigh_quotient of the zero vector")
    return float(f @ (a @ f)) / denom


def path_spectral_radius(n: int) -> float:
    """Largest eigenvalue of the n-vertex path, 2 cos(pi / (n + 1))."""
    if n < 1:
        raise GraphError("path needs n >= 1")
    return 2.0 * math.cos(math.pi / (n + 1))


def path_eigenvector(n: int) -> np.ndarray:
    """Top path eigenvector x_i = sin(i pi / (n + 1)), i = 1..n (unnormalized)."""
    if n < 1:
        raise GraphError("path needs n >= 1")
    i = np.arange(1, n + 1, dtype=np.float64)
    return np.sin(i * math.pi / (n + 1))


def closed_walk_counts(g: Graph, v: int, max_length: int) -> ClosedWalkCounts:
    """Exact closed-walk counts s_k(v) for k = 0..max_length (big integers)."""
    g._check_vertex(v)
    if max_length < 0:
        raise GraphError("max_length must be nonnegative")
    adj = g.adjacency
    n = g.vertex_count
    vec = [0] * n
    vec[v] = 1
    counts = [1]
    for _ in range(max_length):
        nxt = [0] * n
        for u, ns in enumerate(adj):
            x = vec[u]
            if x:
                for w in ns:
                    nxt[w] += x
        vec = nxt
        counts.append(vec[v])
    return ClosedWalkCounts(v, tuple(counts))


def walk_growth_estimate(counts: ClosedWalkCounts) -> list[float]:
    """Estimates s_{2k}(v)^(1/2k) for k = 1..max_length//2."""
    out = []
    for k in range(1, counts.max_length // 2 + 1):
        s = counts[2 * k]
        out.append(math.exp(math.log(s) / (2 * k)) if s > 0 else 0.0)
    return out


def growth_is_nondecreasing(counts: ClosedWalkCounts) -> bool:
    """Exact check that s_{2k}^(1/2k) never decreases, via integer cross powers.

    s_{2(k+1)}^(1/(2k+2)) >= s_{2k}^(1/2k) is equivalent to
    s_{2(k+1)}^k >= s_{2k}^(k+1), an integer comparison.
    """
    kmax = counts.max_length // 2
    for k in range(1, kmax):
        a = counts[2 * k]
        b = counts[2 * (k + 1)]
        if b ** k < a ** (k + 1):
            return False
    return True
