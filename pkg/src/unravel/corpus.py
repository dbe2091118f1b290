"""Canned graph corpora for the verification harness and the test suite.

Three tiers: a smoke corpus small enough to sweep in seconds, a large seeded
corpus for the full bound sweeps, and a short list of bigger regular graphs
for the second-eigenvalue checks. Every random entry is pinned by a GenSpec
seed, so corpora are reproducible across runs and machines.
"""
from __future__ import annotations

from .generate import GenSpec, generate, petersen
from .graph import Graph, strip_leaves

Entry = tuple[str, Graph]


def named_graph(name: str) -> Graph:
    """Small graphs that earn their own names."""
    if name == "diamond":  # K_4 minus an edge
        return Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])
    if name == "paw":  # triangle with a pendant
        return Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (2, 3)])
    if name == "bull":  # triangle with two horns
        return Graph.from_edges(5, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 4)])
    if name == "house":  # 4-cycle with a roof
        return Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (1, 4)])
    if name == "petersen":
        return petersen()
    raise KeyError(f"unknown named graph {name!r}")

NAMED = ("diamond", "paw", "bull", "house", "petersen")


def _spec_entry(family: str, params: dict, seed: int = 0) -> Entry:
    spec = GenSpec(family, params, seed)
    return spec.name(), generate(spec)


def stripped_erdos_renyi(n: int, avg_degree: float, seed: int) -> Entry:
    """Erdos-Renyi at a target average degree, reduced to its 2-core."""
    spec = GenSpec("erdos_renyi", {"n": n, "p": avg_degree / (n - 1)}, seed)
    core, _ = strip_leaves(generate(spec))
    return spec.name() + "-stripped", core


def smoke_corpus() -> list[Entry]:
    """About thirty small graphs covering every hypothesis path.

    Includes min-degree-1 graphs (bounds must hypothesis-skip, not fail),
    complete graphs (ball deletion empties them), bipartite graphs, and a
    few random entries per family.
    """
    entries: list[Entry] = [(name, named_graph(name)) for name in NAMED]
    entries += [
        _spec_entry("complete", {"n": 4}),
        _spec_entry("complete", {"n": 5}),
        _spec_entry("complete_bipartite", {"a": 2, "b": 3}),
        _spec_entry("complete_bipartite", {"a": 3, "b": 3}),
        _spec_entry("cycle", {"n": 5}),
        _spec_entry("cycle", {"n": 6}),
        _spec_entry("cycle", {"n": 10}),
        _spec_entry("cycle", {"n": 31}),
        _spec_entry("path", {"n": 2}),
        _spec_entry("path", {"n": 10}),
        _spec_entry("star", {"k": 5}),
        _spec_entry("d_regular_tree", {"d": 3, "depth": 3}),
    ]
    entries += [
        _spec_entry("random_regular", {"n": 20, "d": 3}, 0),
        _spec_entry("random_regular", {"n": 40, "d": 3}, 1),
        _spec_entry("random_regular", {"n": 60, "d": 3}, 0),
        _spec_entry("random_regular", {"n": 20, "d": 4}, 0),
        _spec_entry("random_regular", {"n": 30, "d": 4}, 2),
        _spec_entry("random_regular", {"n": 24, "d": 5}, 0),
    ]
    entries += [
        stripped_erdos_renyi(30, 3.0, 0),
        stripped_erdos_renyi(40, 4.5, 1),
        stripped_erdos_renyi(50, 4.0, 0),
        stripped_erdos_renyi(60, 3.5, 2),
    ]
    entries += [
        _spec_entry("random_tree", {"n": 15}, 0),
        _spec_entry("random_tree", {"n": 30}, 1),
    ]
    return entries


REGULAR_DEGREES = (3, 4, 5)
REGULAR_SIZES = (20, 40, 60, 100, 150, 200, 250, 300)
ER_SIZES = (30, 60, 100, 140, 200)
ER_AVG_DEGREES = (3.0, 4.5)
SEEDS = (0, 1, 2)


def acceptance_corpus() -> list[Entry]:
    """The 203-graph sweep corpus: regular, stripped sparse random, cycles, Petersen."""
    entries: list[Entry] = []
    for d in REGULAR_DEGREES:
        for n in REGULAR_SIZES:
            for seed in SEEDS:
                entries.append(_spec_entry("random_regular", {"n": n, "d": d}, seed))
    for n in ER_SIZES:
        for avg in ER_AVG_DEGREES:
            for seed in SEEDS:
                entries.append(stripped_erdos_renyi(n, avg, seed))
    for n in range(3, 103):
        entries.append(_spec_entry("cycle", {"n": n}))
    entries.append(("petersen", petersen()))
    return entries


def second_eigenvalue_corpus() -> list[Entry]:
    """Larger regular graphs for the robust second-eigenvalue sweep."""
    return [
        _spec_entry("random_regular", {"n": n, "d": d}, 0)
        for d in REGULAR_DEGREES
        for n in (200, 500, 1000)
    ]


def tree_corpus() -> list[Entry]:
    """Random trees for the tree branch of the ball bound."""
    return [
        _spec_entry("random_tree", {"n": n}, seed)
        for n in (10, 25, 40, 60)
        for seed in SEEDS
    ]
