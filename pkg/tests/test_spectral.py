"""Eigenvalue estimators against dense solves and closed forms."""
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from unravel.generate import (
    GenSpec,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    d_regular_tree,
    generate,
    path_graph,
    petersen,
    star_graph,
)
from unravel.graph import Graph, GraphError
from unravel.spectral import (
    closed_walk_counts,
    dense_spectrum,
    growth_is_nondecreasing,
    path_eigenvector,
    path_spectral_radius,
    rayleigh_quotient,
    second_largest_eigenvalue,
    smallest_eigenvalue,
    spectral_radius,
    spectrum_summary,
    walk_growth_estimate,
)

import oracles


SMALL_GRAPHS = [
    path_graph(2),
    path_graph(9),
    cycle_graph(5),
    cycle_graph(12),
    complete_graph(6),
    complete_bipartite_graph(3, 4),  # bipartite: power iteration must not oscillate
    star_graph(7),
    petersen(),
    d_regular_tree(3, 3),
    generate(GenSpec("erdos_renyi", {"n": 40, "p": 0.15}, 2)),
    generate(GenSpec("random_regular", {"n": 30, "d": 4}, 1)),
    Graph.from_edges(7, [(0, 1), (1, 2), (0, 2), (4, 5), (5, 6)]),  # disconnected
]


@pytest.mark.parametrize("g", SMALL_GRAPHS, ids=lambda g: f"n{g.vertex_count}m{g.edge_count}")
def test_spectral_radius_matches_dense(g):
    est = spectral_radius(g)
    top = float(np.linalg.eigvalsh(g.dense())[-1])
    assert est.converged
    assert abs(est.value - top) <= 1e-8
    assert est.residual <= 1e-8


def test_spectral_radius_certificate_is_residual():
    g = petersen()
    est = spectral_radius(g, tol=1e-12)
    # eigenvalue perturbation: |value - lambda| <= residual for symmetric A
    assert abs(est.value - 3.0) <= est.residual + 1e-12


def test_spectral_radius_edgeless():
    g = Graph.from_edges(3, [])
    assert spectral_radius(g).value == 0.0


def test_spectral_radius_rejects_empty():
    with pytest.raises(GraphError):
        spectral_radius(Graph.from_edges(0, []))


@pytest.mark.parametrize("g", SMALL_GRAPHS, ids=lambda g: f"n{g.vertex_count}m{g.edge_count}")
def test_second_largest_both_paths(g):
    if g.vertex_count < 2:
        return
    w = np.linalg.eigvalsh(g.dense())
    dense = second_largest_eigenvalue(g)
    sparse = second_largest_eigenvalue(g, dense_threshold=1)  # force deflation path
    assert abs(dense - w[-2]) <= 1e-10
    assert abs(sparse - w[-2]) <= 1e-8


@pytest.mark.parametrize("g", SMALL_GRAPHS, ids=lambda g: f"n{g.vertex_count}m{g.edge_count}")
def test_smallest_eigenvalue_both_paths(g):
    w = np.linalg.eigvalsh(g.dense())
    assert abs(smallest_eigenvalue(g) - w[0]) <= 1e-10
    assert abs(smallest_eigenvalue(g, dense_threshold=1) - w[0]) <= 1e-8


def test_spectrum_summary_petersen():
    s = spectrum_summary(petersen())
    assert abs(s.lambda1 - 3.0) <= 1e-10
    assert abs(s.lambda2 - 1.0) <= 1e-10
    assert abs(s.lambda_min + 2.0) <= 1e-10
    assert s.n == 10


def test_dense_spectrum_sorted():
    w = dense_spectrum(cycle_graph(8))
    assert np.all(np.diff(w) >= -1e-12)
    assert abs(w[-1] - 2.0) <= 1e-12


@pytest.mark.parametrize("n", [1, 2, 3, 10, 137])
def test_path_closed_form_and_eigenvector(n):
    lam = path_spectral_radius(n)
    assert abs(lam - 2 * math.cos(math.pi / (n + 1))) == 0.0
    x = path_eigenvector(n)
    assert x.shape == (n,)
    assert np.all(x > 0)
    # A x = lam x componentwise, with zero padding at the ends
    padded = np.concatenate([[0.0], x, [0.0]])
    ax = padded[:-2] + padded[2:]
    assert np.max(np.abs(ax - lam * x)) <= 1e-12


def test_path_spectral_radius_matches_power_iteration():
    for n in (2, 5, 33):
        est = spectral_radius(path_graph(n))
        assert abs(est.value - path_spectral_radius(n)) <= 1e-9


def test_closed_walk_counts_match_matrix_powers():
    g = petersen()
    adj = [list(ns) for ns in g.adjacency]
    counts = closed_walk_counts(g, 0, 12)
    exact = oracles.closed_walks_exact(adj, 0, 12)
    assert [counts[k] for k in range(13)] == exact


def test_closed_walk_counts_are_python_ints():
    g = complete_graph(9)
    counts = closed_walk_counts(g, 0, 40)
    assert isinstance(counts[40], int)
    assert counts[40] > 2**63  # would overflow any fixed-width integer


def test_closed_walk_counts_validate_args():
    g = cycle_graph(4)
    with pytest.raises(GraphError):
        closed_walk_counts(g, 9, 4)
    with pytest.raises(GraphError):
        closed_walk_counts(g, 0, -1)


def test_walk_growth_monotone_on_examples():
    for g, v in [(petersen(), 0), (cycle_graph(20), 3), (star_graph(5), 1)]:
        counts = closed_walk_counts(g, v, 30)
        assert growth_is_nondecreasing(counts)
        ests = walk_growth_estimate(counts)
        assert all(b >= a - 1e-12 for a, b in zip(ests, ests[1:]))


def test_walk_growth_approaches_lambda1():
    g = petersen()
    est = walk_growth_estimate(closed_walk_counts(g, 0, 60))[-1]
    assert est <= 3.0 + 1e-12
    assert 3.0 - est < 0.12


def test_rayleigh_quotient_forms_agree():
    g = petersen()
    rng = np.random.default_rng(0)
    f = rng.normal(size=10)
    want = f @ g.dense() @ f / (f @ f)
    assert abs(rayleigh_quotient(g, f) - want) <= 1e-12
    assert abs(rayleigh_quotient(g.sparse(), f) - want) <= 1e-12
    assert abs(rayleigh_quotient(g.dense(), f) - want) <= 1e-12


def test_rayleigh_quotient_rejects_zero_vector():
    with pytest.raises(GraphError):
        rayleigh_quotient(cycle_graph(3), np.zeros(3))


def test_rayleigh_never_exceeds_lambda1():
    g = generate(GenSpec("erdos_renyi", {"n": 25, "p": 0.2}, 9))
    top = float(np.linalg.eigvalsh(g.dense())[-1])
    rng = np.random.default_rng(1)
    for _ in range(50):
        f = rng.normal(size=25)
        assert rayleigh_quotient(g, f) <= top + 1e-10


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 24), st.floats(0.05, 0.6))
def test_spectral_radius_random_graphs(seed, n, p):
    rng = np.random.default_rng(seed)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    g = Graph.from_edges(n, edges)
    est = spectral_radius(g)
    top = float(np.linalg.eigvalsh(g.dense())[-1]) if n else 0.0
    assert abs(est.value - top) <= 1e-8
