"""Family constructors: shapes, determinism, and validity of random models."""
import numpy as np
import pytest

from unravel.generate import (
    FAMILIES,
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
from unravel.graph import GraphError, connected_components

import oracles


def test_path_and_cycle_shapes():
    assert path_graph(1).edge_count == 0
    assert path_graph(6).edge_count == 5
    assert cycle_graph(3).edge_count == 3
    g = cycle_graph(9)
    assert all(g.degree(v) == 2 for v in range(9))


def test_complete_shapes():
    assert complete_graph(5).edge_count == 10
    kab = complete_bipartite_graph(2, 3)
    assert kab.edge_count == 6
    assert sorted(kab.degrees()) == [2, 2, 2, 3, 3]


def test_star_shape():
    g = star_graph(6)
    assert g.vertex_count == 7
    assert g.degree(0) == 6


def test_d_regular_tree_sizes():
    # 1 + d * ((d-1)^depth - 1) / (d-2) vertices for d >= 3
    g = d_regular_tree(3, 4)
    assert g.vertex_count == 1 + 3 * (2**4 - 1)
    assert g.degree(0) == 3
    assert oracles.is_tree([list(ns) for ns in g.adjacency])


def test_petersen_is_3_regular_girth_5():
    g = petersen()
    assert g.vertex_count == 10 and g.edge_count == 15
    assert g.is_regular() == 3
    powers = oracles.walk_matrix_powers([list(ns) for ns in g.adjacency], 4)
    assert all(powers[3][v][v] == 0 for v in range(10))  # no triangles
    # girth 5: closed 4-walks are d^2 palindromes plus d(d-1) two-step bounces
    assert all(powers[4][v][v] == 15 for v in range(10))


def test_random_regular_is_regular():
    for d, n, seed in [(3, 20, 0), (4, 30, 5), (5, 24, 2)]:
        g = generate(GenSpec("random_regular", {"n": n, "d": d}, seed))
        assert g.vertex_count == n
        assert g.is_regular() == d


def test_random_regular_rejects_odd_nd():
    with pytest.raises(GraphError):
        GenSpec("random_regular", {"n": 5, "d": 3}).validate()


def test_random_tree_is_tree():
    g = generate(GenSpec("random_tree", {"n": 25}, 4))
    assert oracles.is_tree([list(ns) for ns in g.adjacency])


def test_erdos_renyi_plausible_density():
    g = generate(GenSpec("erdos_renyi", {"n": 200, "p": 0.05}, 0))
    expected = 0.05 * 199 * 200 / 2
    assert 0.6 * expected < g.edge_count < 1.4 * expected


def test_generation_is_deterministic():
    for family, params in [
        ("random_regular", {"n": 40, "d": 3}),
        ("erdos_renyi", {"n": 30, "p": 0.2}),
        ("random_tree", {"n": 30}),
    ]:
        a = generate(GenSpec(family, params, 7))
        b = generate(GenSpec(family, params, 7))
        assert a == b


def test_different_seeds_differ():
    a = generate(GenSpec("random_regular", {"n": 60, "d": 3}, 0))
    b = generate(GenSpec("random_regular", {"n": 60, "d": 3}, 1))
    assert a != b


def test_spec_name_round_trip():
    spec = GenSpec("random_regular", {"n": 40, "d": 3}, 7)
    assert spec.name() == "random_regular-d3-n40-s7"
    again = GenSpec.from_json_dict(spec.to_json_dict())
    assert again == spec


def test_spec_validation_catches_bad_params():
    with pytest.raises(GraphError):
        GenSpec("cycle", {"n": 2}).validate()
    with pytest.raises(GraphError):
        GenSpec("nonsense", {"n": 3}).validate()
    with pytest.raises(GraphError):
        GenSpec("cycle", {"m": 5}).validate()
    with pytest.raises(GraphError):
        GenSpec("erdos_renyi", {"n": 10, "p": 1.5}).validate()


def test_every_family_generates():
    specs = [
        GenSpec("path", {"n": 4}),
        GenSpec("cycle", {"n": 4}),
        GenSpec("complete", {"n": 4}),
        GenSpec("complete_bipartite", {"a": 2, "b": 2}),
        GenSpec("star", {"k": 3}),
        GenSpec("d_regular_tree", {"d": 3, "depth": 2}),
        GenSpec("random_regular", {"n": 10, "d": 3}),
        GenSpec("erdos_renyi", {"n": 10, "p": 0.3}),
        GenSpec("random_tree", {"n": 10}),
    ]
    assert {s.family for s in specs} == set(FAMILIES)
    for spec in specs:
        g = generate(spec)
        assert g.vertex_count > 0


def test_random_connected_families_are_connected():
    # trees always; regular graphs at these sizes in practice (seeds pinned)
    for seed in range(3):
        g = generate(GenSpec("random_tree", {"n": 40}, seed))
        assert len(connected_components(g)) == 1
