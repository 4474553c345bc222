"""Constructions: prime search, affine plane and its split, the C4-free
pipeline, bipartite and star splits, coloring-based splits, round robins."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import complete_graph
from splitfree.constructions import (
    EdgeColoring,
    build_affine_plane,
    build_affine_split,
    build_bipartite_split,
    build_split_from_coloring,
    build_star_free_split,
    construct_c4_free_split,
    next_prime,
    pipeline_parameters,
    read_coloring,
    round_robin_coloring,
    write_coloring,
)
from splitfree.errors import (
    ColoringIncomplete,
    CompositeCharacteristic,
    ParameterError,
    SizeGuard,
    TooLarge,
)
from splitfree.freeness import contains_subgraph, is_c4_free, is_kst_free, parse_forbidden_spec
from splitfree.graphs import connected_components, two_coloring, verify_split, write_split


def test_next_prime_examples():
    assert next_prime(10).p == 11
    assert next_prime(11).p == 11
    result = next_prime(24)
    assert result.p == 29 and result.within_gap  # 29 <= 24 + 24**0.6 ~ 30.7
    with pytest.raises(ParameterError):
        next_prime(1)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_affine_plane_invariants(p):
    plane = build_affine_plane(p)
    q = p * p
    assert plane.point_count == plane.line_count == q * q
    g = plane.incidence_graph()
    assert g.V == 2 * q * q and g.M == q ** 3
    deg = g.degrees()
    assert (deg == q).all()  # every point on q lines, every line has q points
    # lines of one parallel class partition the points
    for m in range(q):
        seen = np.concatenate([plane.points_on_line(m, b) for b in range(q)])
        assert len(np.unique(seen)) == q * q == len(seen)
    assert is_c4_free(g) is None
    assert two_coloring(g) is not None  # incidence graphs are bipartite


def test_affine_plane_guards():
    with pytest.raises(CompositeCharacteristic):
        build_affine_plane(4)
    with pytest.raises(TooLarge):
        build_affine_plane(37)
    build_affine_plane(37, max_p=37)  # guard is overridable


@pytest.mark.parametrize("p", [2, 3])
def test_affine_split_blob_structure(p):
    s = build_affine_split(p)
    q = p * p
    assert s.n == p ** 3 and s.k == 2 * p
    assert s.graph.V == 2 * q * q
    assert (s.blob_sizes() == 2 * p).all()
    # each blob: p points and p lines
    for members in s.blob_members():
        assert int((members < q * q).sum()) == p
    assert verify_split(s, "lax").passed
    assert is_c4_free(s.graph) is None

    # every (point-blob, line-blob) pair spans an edge -- exhaustively;
    # the construction in fact gives exactly one such incidence
    e = s.graph.edges
    point_blob = s.blob_of[e[:, 0]]
    line_blob = s.blob_of[e[:, 1]]
    counts = np.bincount(point_blob * s.n + line_blob, minlength=s.n * s.n)
    assert (counts.reshape(s.n, s.n) == 1).all()


def test_affine_split_examples():
    s2 = build_affine_split(2)
    assert (s2.n, s2.k, s2.graph.V) == (8, 4, 32)
    s3 = build_affine_split(3)
    assert (s3.n, s3.k, s3.graph.V) == (27, 6, 162)


def test_affine_split_contracts_to_complete():
    from splitfree.graphs import contract_blobs, prune_to_split

    pruned = prune_to_split(build_affine_split(2))
    assert contract_blobs(pruned) == complete_graph(8)


def test_affine_split_deterministic(tmp_path):
    a, b = tmp_path / "a.sg", tmp_path / "b.sg"
    write_split(build_affine_split(3), a)
    write_split(build_affine_split(3), b)
    assert a.read_bytes() == b.read_bytes()


def test_pipeline_parameters_examples():
    assert pipeline_parameters(1000) == (100, 10, 11)
    assert pipeline_parameters(27) == (9, 3, 3)
    assert pipeline_parameters(100000) == (2155, 47, 47)


def test_pipeline_small():
    s = construct_c4_free_split(27)
    assert s.n == 27 and s.k == 6
    assert verify_split(s, "strict").passed
    assert is_c4_free(s.graph) is None
    with pytest.raises(ParameterError):
        construct_c4_free_split(7)


def test_pipeline_blob_size_vs_target():
    # blob size 2p stays within 1.25x of 2*n^(1/3) across the supported sweep
    for n in (10 ** 3, 10 ** 4, 10 ** 5, 10 ** 6):
        _, _, p = pipeline_parameters(n)
        assert 2 * p / (2 * n ** (1 / 3)) <= 1.25


def test_pipeline_size_guard():
    with pytest.raises(SizeGuard):
        construct_c4_free_split(10 ** 5)  # needs p=47 > default guard


def test_bipartite_split_examples():
    s = build_bipartite_split(3)
    assert s.graph.V == 6 and s.graph.M == 3
    assert verify_split(s, "strict").passed
    assert contains_subgraph(s.graph, parse_forbidden_spec("C3")) is None

    assert build_bipartite_split(2).graph.M == 1

    s50 = build_bipartite_split(50)
    assert two_coloring(s50.graph) is not None
    assert contains_subgraph(s50.graph, parse_forbidden_spec("C5")) is None
    with pytest.raises(ParameterError):
        build_bipartite_split(1)


def two_c5_coloring() -> EdgeColoring:
    """K_5 as two edge-disjoint 5-cycles, one per color."""
    cycle_a = [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]
    cycle_b = [(0, 2), (2, 4), (1, 4), (1, 3), (0, 3)]
    color = {tuple(sorted(e)): 0 for e in cycle_a}
    color.update({tuple(sorted(e)): 1 for e in cycle_b})
    return EdgeColoring(5, 2, color)


def test_split_from_coloring_two_c5s():
    s = build_split_from_coloring(two_c5_coloring())
    assert s.n == 5 and s.k == 2 and s.graph.V == 10
    assert verify_split(s, "strict").passed
    assert contains_subgraph(s.graph, parse_forbidden_spec("C3")) is None
    labels = connected_components(s.graph)
    assert labels.max() == 1  # exactly two components
    for comp in (0, 1):
        members = np.flatnonzero(labels == comp)
        assert len(members) == 5
        degs = s.graph.degrees()[members]
        assert (degs == 2).all()  # 5 vertices, all degree 2, connected: a C5


def test_split_from_coloring_single_color():
    c = EdgeColoring(4, 1, {(i, j): 0 for i in range(4) for j in range(i + 1, 4)})
    s = build_split_from_coloring(c)
    assert s.k == 1 and s.graph == complete_graph(4)


def test_split_from_coloring_copies_color_classes():
    c = two_c5_coloring()
    s = build_split_from_coloring(c)
    # copy l lives on vertices {i*k + l}: it must be isomorphic to color class l
    for colr in range(c.colors):
        copy_edges = {(u // c.colors, v // c.colors)
                      for u, v in s.graph.edges.tolist()
                      if u % c.colors == colr and v % c.colors == colr}
        class_edges = {pair for pair, cc in c.color_of.items() if cc == colr}
        assert copy_edges == class_edges
    # no edges between copies
    assert all(u % c.colors == v % c.colors for u, v in s.graph.edges.tolist())


def test_split_from_coloring_incomplete():
    with pytest.raises(ColoringIncomplete):
        build_split_from_coloring(EdgeColoring(3, 2, {(0, 1): 0, (0, 2): 1}))


def test_coloring_io_round_trip(tmp_path):
    c = two_c5_coloring()
    path = tmp_path / "c.ec"
    write_coloring(c, path)
    assert read_coloring(path) == c


def test_round_robin_examples():
    rr4 = round_robin_coloring(4)
    assert rr4.colors == 3 and len(rr4.color_of) == 6
    rr7 = round_robin_coloring(7)
    assert rr7.colors == 7 and len(rr7.color_of) == 21
    per_round = {}
    for (i, j), r in rr7.color_of.items():
        per_round.setdefault(r, []).append((i, j))
    assert all(len(edges) == 3 for edges in per_round.values())


@given(st.integers(2, 40))
@settings(max_examples=40, deadline=None)
def test_round_robin_is_proper(n):
    rr = round_robin_coloring(n)
    assert rr.colors == (n - 1 if n % 2 == 0 else n)
    assert len(rr.color_of) == n * (n - 1) // 2
    seen = set()
    for (i, j), r in rr.color_of.items():
        assert (i, r) not in seen and (j, r) not in seen  # one edge per vertex per round
        seen.add((i, r))
        seen.add((j, r))


def test_star_free_split_examples():
    s = build_star_free_split(8, 4)
    assert s.n == 8 and s.k == 3
    assert int(s.graph.degrees().max()) <= 3
    assert is_kst_free(s.graph, 1, 4) is None
    assert verify_split(s, "strict").passed

    assert build_star_free_split(7, 4).k == 3
    s10 = build_star_free_split(10, 2)
    assert s10.k == 9 and int(s10.graph.degrees().max()) <= 1

    with pytest.raises(ParameterError):
        build_star_free_split(10, 1)


@given(st.integers(3, 40), st.integers(2, 6))
@settings(max_examples=50, deadline=None)
def test_star_free_split_properties(n, t):
    s = build_star_free_split(n, t)
    rounds = n - 1 if n % 2 == 0 else n
    assert s.k == -(-rounds // (t - 1))
    assert -(-(n - 1) // (t - 1)) <= s.k <= -(-n // (t - 1)) + 1
    assert int(s.graph.degrees().max()) <= t - 1
    assert verify_split(s, "strict").passed
