"""Shared fixtures and independent brute-force oracles.

The oracles here deliberately avoid the package's numpy code paths: they
recount things with plain Python dicts and itertools so that test
expectations are computed on an independent route.
"""

from __future__ import annotations

import itertools

import numpy as np
import pytest

from splitfree.graphs import Graph, SplitGraph, build_graph


def cycle_graph(k: int) -> Graph:
    return build_graph(k, [(i, (i + 1) % k) for i in range(k)])


def path_graph(k: int) -> Graph:
    return build_graph(k, [(i, i + 1) for i in range(k - 1)])


def complete_graph(n: int) -> Graph:
    return build_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def biclique_graph(s: int, t: int) -> Graph:
    return build_graph(s + t, [(i, s + j) for i in range(s) for j in range(t)])


@pytest.fixture
def c6() -> Graph:
    return cycle_graph(6)


def brute_split_census(split: SplitGraph) -> dict:
    """Pure-Python recount of crossing/internal edges per blob pair."""
    blob = [int(b) for b in split.blob_of]
    pair_edges: dict[tuple[int, int], list[tuple[int, int]]] = {}
    internal = 0
    for u, v in split.graph.edges.tolist():
        bu, bv = blob[u], blob[v]
        if bu == bv:
            internal += 1
        else:
            pair_edges.setdefault((min(bu, bv), max(bu, bv)), []).append((u, v))
    missing = [(i, j) for i in range(split.n) for j in range(i + 1, split.n)
               if (i, j) not in pair_edges]
    multi = sum(1 for edges in pair_edges.values() if len(edges) >= 2)
    return {"pair_edges": pair_edges, "internal": internal,
            "missing": missing, "multi": multi}


def brute_contains_subgraph(g: Graph, h: Graph) -> bool:
    """Subgraph containment by raw enumeration of injective maps; only for
    tiny patterns and hosts."""
    g_adj = [set() for _ in range(g.V)]
    for u, v in g.edges.tolist():
        g_adj[u].add(v)
        g_adj[v].add(u)
    h_edges = h.edges.tolist()
    for image in itertools.permutations(range(g.V), h.V):
        if all(image[v] in g_adj[image[u]] for u, v in h_edges):
            return True
    return False


def random_graph(n: int, p: float, rng: np.random.Generator) -> Graph:
    iu, iv = np.triu_indices(n, k=1)
    mask = rng.random(len(iu)) < p
    return build_graph(n, np.column_stack((iu[mask], iv[mask])))


def seeded_corpus(count: int = 100, n: int = 30, p: float = 0.2, seed: int = 0):
    """The fixed random-graph corpus used for oracle agreement checks."""
    rng = np.random.default_rng(seed)
    return [random_graph(n, p, rng) for _ in range(count)]


# one line per acceptance criterion, filled by tests/test_acceptance.py
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
