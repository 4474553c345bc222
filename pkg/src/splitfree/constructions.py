"""Deterministic split constructions.

* affine-plane incidence split: a lax (p^3, 2p)-split whose graph is C4-free,
  built from points and lines of the affine plane over GF(p^2);
* the C4-free pipeline: prime selection from the target blob count, affine
  split, blob restriction, pruning to strict form;
* the bipartite 2-split (avoids every non-bipartite graph);
* splits assembled from an edge coloring of K_n (one vertex copy per color);
* star-free splits from equitably grouped round-robin rounds.

Everything here is deterministic: identical inputs give byte-identical
serialized outputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import (
    ColoringIncomplete,
    ParameterError,
    PipelineUnderflow,
    SizeGuard,
    TooLarge,
)
from .fields import Field, is_prime, make_quadratic_field
from .graphs import Graph, SplitGraph, prune_to_split, restrict_blobs

MAX_AFFINE_P = 31  # default guard: the incidence graph has 2*p^4 vertices, p^6 edges


class PrimeSearch(NamedTuple):
    p: int
    within_gap: bool  # p <= k + k**0.6, informational


def next_prime(k: int) -> PrimeSearch:
    """Smallest prime >= k, found by upward trial-division testing."""
    if k < 2:
        raise ParameterError(f"next_prime needs k >= 2, got {k}")
    p = k
    while not is_prime(p):
        p += 1
    return PrimeSearch(p, p <= k + k ** 0.6)


# ---------------------------------------------------------------------------
# Affine plane over GF(p^2)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AffinePlane:
    """Points (x, y) and non-vertical lines y = m*x + b over GF(q), q = p^2.

    Ids: point (x, y) -> idx(x)*q + idx(y); line (m, b) -> q^2 + idx(m)*q + idx(b),
    where idx is the canonical field-element index.  There are q^2 points and
    q^2 lines; every line has q points and every point is on q lines (one per
    slope).
    """

    field: Field

    @property
    def q(self) -> int:
        return self.field.order

    @property
    def point_count(self) -> int:
        return self.q ** 2

    @property
    def line_count(self) -> int:
        return self.q ** 2

    def point_id(self, x, y) -> int:
        return self.field.index(x) * self.q + self.field.index(y)

    def line_id(self, m, b) -> int:
        return self.q ** 2 + self.field.index(m) * self.q + self.field.index(b)

    def points_on_line(self, m_index: int, b_index: int) -> np.ndarray:
        """Point ids on the line of slope index m and intercept index b."""
        p, q = self.field.p, self.q
        xi = np.arange(q, dtype=np.int64)
        x0, x1 = xi % p, xi // p
        mx0, mx1 = self.field.mul_arrays(m_index % p, m_index // p, x0, x1)
        y0, y1 = self.field.add_arrays(mx0, mx1, b_index % p, b_index // p)
        return xi * q + (y1 * p + y0)

    def incidence_graph(self) -> Graph:
        """Bipartite point-line incidence graph on 2*q^2 vertices, q^3 edges."""
        p, q = self.field.p, self.q
        vcount = 2 * q * q
        xi = np.tile(np.arange(q, dtype=np.int64), q)
        bi = np.repeat(np.arange(q, dtype=np.int64), q)
        x0, x1 = xi % p, xi // p
        b0, b1 = bi % p, bi // p
        # encoded edge keys point_id*V + line_id, filled slope by slope;
        # incidences are pairwise distinct, so the lean constructor applies
        keys = np.empty(q ** 3, dtype=np.int64)
        for mi in range(q):
            mx0, mx1 = self.field.mul_arrays(mi % p, mi // p, x0, x1)
            y0, y1 = self.field.add_arrays(mx0, mx1, b0, b1)
            block = slice(mi * q * q, (mi + 1) * q * q)
            keys[block] = (xi * q + (y1 * p + y0)) * vcount + (q * q + mi * q + bi)
        return Graph.from_edge_keys(vcount, keys)


def build_affine_plane(p: int, max_p: int | None = None) -> AffinePlane:
    if not is_prime(p):
        from .errors import CompositeCharacteristic
        raise CompositeCharacteristic(f"{p} is not prime")
    limit = MAX_AFFINE_P if max_p is None else max_p
    if p > limit:
        raise TooLarge(
            f"affine plane for p={p} has {2 * p ** 4} vertices and {p ** 6} "
            f"incidences; guard is p <= {limit}")
    return AffinePlane(make_quadratic_field(p))


def affine_blob_assignment(p: int) -> np.ndarray:
    """Blob id per vertex of the (p^3, 2p) affine split, in closed form.

    Point blobs fix x and the coset of y (all y agreeing with a transversal
    element shifted by the prime subfield); line blobs fix the slope m and
    the coset of the intercept b.  Point blob (x, h) and line blob (m, a)
    are paired by equal index, giving p^3 blobs of size exactly 2p.
    """
    q = p * p
    pid = np.arange(q * q, dtype=np.int64)
    # point (x, y): coset of y under the prime subfield is determined by y.c0
    point_blob = (pid // q) * p + (pid % q) % p
    # line (m, b): coset of b is determined by b.c1
    line_blob = (pid // q) * p + (pid % q) // p
    return np.concatenate((point_blob, line_blob))


def build_affine_split(p: int, max_p: int | None = None) -> SplitGraph:
    """Lax (p^3, 2p)-split of the affine incidence graph; C4-free by the
    unique-intersection property of distinct lines."""
    plane = build_affine_plane(p, max_p)
    return SplitGraph(plane.incidence_graph(), affine_blob_assignment(p), p ** 3, 2 * p)


def _ceil_root(value: int, exponent: int) -> int:
    """Smallest r >= 0 with r**exponent >= value, computed exactly."""
    if value <= 0:
        return 0
    r = max(1, round(value ** (1.0 / exponent)))
    while r ** exponent >= value:
        r -= 1
    while r ** exponent < value:
        r += 1
    return r


def pipeline_parameters(n: int) -> tuple[int, int, int]:
    """(N, k0, p) for the C4-free pipeline at target blob count n: N is the
    cube-root ceiling of n^2, k0 its square-root ceiling, p the next prime."""
    big_n = _ceil_root(n * n, 3)
    k0 = _ceil_root(big_n, 2)
    return big_n, k0, next_prime(max(k0, 2)).p


def construct_c4_free_split(n: int, max_p: int | None = None) -> SplitGraph:
    """Strict C4-free (n, 2p)-split: affine split -> restrict to n blobs -> prune."""
    if n < 8:
        raise ParameterError(f"pipeline needs n >= 8, got {n}")
    _, _, p = pipeline_parameters(n)
    retries = 0
    while p ** 3 < n and retries < 2:
        p = next_prime(p + 1).p
        retries += 1
    if p ** 3 < n:
        raise PipelineUnderflow(f"no prime with p^3 >= {n} found near the target")
    limit = MAX_AFFINE_P if max_p is None else max_p
    if p > limit:
        raise SizeGuard(
            f"pipeline for n={n} needs p={p} > {limit}; the affine graph would "
            f"have {2 * p ** 4} vertices and the strict split {n * (n - 1) // 2} edges")
    return prune_to_split(restrict_blobs(build_affine_split(p, max_p), n))


# ---------------------------------------------------------------------------
# Bipartite 2-split
# ---------------------------------------------------------------------------

def build_bipartite_split(n: int) -> SplitGraph:
    """Strict (n, 2)-split whose graph is bipartite, hence free of every
    non-bipartite graph.  Blob i is {2i (red), 2i+1 (blue)}; the edge for
    blobs i < j joins red_i to blue_j."""
    if n < 2:
        raise ParameterError(f"bipartite split needs n >= 2, got {n}")
    i, j = np.triu_indices(n, k=1)
    edges = np.column_stack((2 * i.astype(np.int64), 2 * j.astype(np.int64) + 1))
    return SplitGraph(Graph(2 * n, edges), np.arange(2 * n, dtype=np.int64) // 2, n, 2)


# ---------------------------------------------------------------------------
# Splits from edge colorings
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EdgeColoring:
    """A k-coloring of (a subset of) the edges of K_n, pairs keyed (i, j), i<j."""

    n: int
    colors: int
    color_of: dict[tuple[int, int], int]

    def __post_init__(self):
        if self.n < 2 or self.colors < 1:
            raise ParameterError("coloring needs n >= 2 and colors >= 1")
        for (i, j), c in self.color_of.items():
            if not (0 <= i < j < self.n):
                raise ParameterError(f"invalid pair ({i}, {j}) for n={self.n}")
            if not 0 <= c < self.colors:
                raise ParameterError(f"color {c} outside [0, {self.colors})")

    def missing_pair(self) -> tuple[int, int] | None:
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if (i, j) not in self.color_of:
                    return (i, j)
        return None


def build_split_from_coloring(c: EdgeColoring) -> SplitGraph:
    """Strict (n, k)-split from a complete k-edge-coloring of K_n.

    Blob i holds k copies of vertex i (ids i*k .. i*k+k-1, one per color);
    the pair {i, j} of color l is joined by the edge between the l-th copies.
    The graph is a vertex-disjoint union of one copy of each color class.
    """
    missing = c.missing_pair()
    if missing is not None:
        raise ColoringIncomplete(f"pair {missing} has no color")
    k = c.colors
    items = sorted(c.color_of.items())
    edges = np.array(
        [(i * k + colr, j * k + colr) for (i, j), colr in items], dtype=np.int64)
    blob_of = np.arange(c.n * k, dtype=np.int64) // k
    return SplitGraph(Graph(c.n * k, edges), blob_of, c.n, k)


def round_robin_coloring(n: int) -> EdgeColoring:
    """Color K_n's edges by round-robin round: n-1 perfect matchings for even
    n (circle method, one vertex fixed), n near-perfect matchings for odd n."""
    if n < 2:
        raise ParameterError(f"round robin needs n >= 2, got {n}")
    m = n if n % 2 == 0 else n + 1  # odd n: schedule with a dummy, drop its pairs
    rounds = m - 1
    color_of: dict[tuple[int, int], int] = {}
    for r in range(rounds):
        pairs = [(m - 1, r)]
        pairs += [((r + i) % (m - 1), (r - i) % (m - 1)) for i in range(1, m // 2)]
        for a, b in pairs:
            if a < n and b < n:
                color_of[(min(a, b), max(a, b))] = r
    return EdgeColoring(n, rounds, color_of)


def build_star_free_split(n: int, t: int) -> SplitGraph:
    """Strict (n, k)-split with maximum degree <= t-1 (so no t-leaf star),
    k = ceil(R/(t-1)) for R round-robin rounds, grouped equitably."""
    if n < 3 or t < 2:
        raise ParameterError(f"star-free split needs n >= 3 and t >= 2, got ({n}, {t})")
    rr = round_robin_coloring(n)
    rounds = rr.colors
    k = -(-rounds // (t - 1))
    base, extra = divmod(rounds, k)
    group_of = np.repeat(np.arange(k), [base + (g < extra) for g in range(k)])
    grouped = EdgeColoring(
        n, k, {pair: int(group_of[r]) for pair, r in rr.color_of.items()})
    return build_split_from_coloring(grouped)


# ---------------------------------------------------------------------------
# Edge-coloring text format:
#   coloring 1
#   n <n> colors <k>
#   c <i> <j> <color>      for every i<j, lexicographically sorted
# ---------------------------------------------------------------------------

def write_coloring(c: EdgeColoring, path) -> None:
    missing = c.missing_pair()
    if missing is not None:
        raise ColoringIncomplete(f"pair {missing} has no color; format requires all pairs")
    lines = ["coloring 1", f"n {c.n} colors {c.colors}"]
    lines.extend(f"c {i} {j} {c.color_of[(i, j)]}"
                 for i in range(c.n) for j in range(i + 1, c.n))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_coloring(path) -> EdgeColoring:
    from .errors import ParseError
    from .graphs import _LineReader, _int_field

    reader = _LineReader(path)
    lineno, toks = reader.next("'coloring 1' header")
    if toks != ["coloring", "1"]:
        raise ParseError(lineno, "expected header 'coloring 1'")
    lineno, toks = reader.next("'n <n> colors <k>' line")
    if len(toks) != 4 or toks[0] != "n" or toks[2] != "colors":
        raise ParseError(lineno, "expected 'n <n> colors <k>'")
    n = _int_field(lineno, toks[1], "n")
    k = _int_field(lineno, toks[3], "color count")
    color_of = {}
    for i in range(n):
        for j in range(i + 1, n):
            lineno, toks = reader.next(f"'c {i} {j} <color>'")
            if len(toks) != 4 or toks[0] != "c":
                raise ParseError(lineno, f"expected 'c <i> <j> <color>', got {' '.join(toks)!r}")
            gi = _int_field(lineno, toks[1], "i")
            gj = _int_field(lineno, toks[2], "j")
            if (gi, gj) != (i, j):
                raise ParseError(lineno, f"expected pair ({i}, {j}), got ({gi}, {gj})")
            colr = _int_field(lineno, toks[3], "color")
            if not 0 <= colr < k:
                raise ParseError(lineno, f"color {colr} outside [0, {k})")
            color_of[(i, j)] = colr
    reader.done()
    return EdgeColoring(n, k, color_of)
