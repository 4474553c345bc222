"""Core graph and split-graph types plus split verification and normalization.

A split graph is a graph together with an assignment of its vertices to n
nonempty blobs of size at most k.  A split is *lax* when every pair of blobs
spans at least one edge and *strict* when additionally no edge is internal to
a blob and every pair spans exactly one edge, so a strict split of n blobs
has exactly n(n-1)/2 edges.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    EndpointOutOfRange,
    InvariantViolation,
    LoopEdge,
    NotALaxSplit,
    ParameterError,
    ParseError,
    TargetTooLarge,
)

BITSET_THRESHOLD = 1 << 16  # packed adjacency rows are built only below this


class Graph:
    """Immutable simple undirected graph on vertices 0..V-1.

    Edges are held as a canonical (M, 2) int64 array with u < v, sorted
    lexicographically.  Adjacency structures (CSR neighbor lists, per-vertex
    neighbor sets, packed bitset rows) are built lazily.
    """

    def __init__(self, vertex_count: int, edges: np.ndarray,
                 bitset_threshold: int | None = None):
        self.V = int(vertex_count)
        e = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        if e.size:
            u = np.minimum(e[:, 0], e[:, 1])
            v = np.maximum(e[:, 0], e[:, 1])
            keys = np.unique(u * self.V + v)
            e = np.column_stack((keys // self.V, keys % self.V))
        self.edges = e
        self.M = len(e)
        self.bitset_threshold = BITSET_THRESHOLD if bitset_threshold is None else bitset_threshold
        self._indptr = None
        self._indices = None
        self._adjsets = None
        self._bitrows = None

    @classmethod
    def from_edge_keys(cls, vertex_count: int, keys: np.ndarray) -> "Graph":
        """Lean constructor from encoded edges u*V+v (u < v), consuming the
        key array in place; keys must be duplicate-free.  Used by bulk
        builders to halve the peak memory of canonicalization."""
        keys.sort()
        if len(keys) and bool((keys[1:] == keys[:-1]).any()):
            raise InvariantViolation("duplicate edge keys")
        g = cls.__new__(cls)
        g.V = int(vertex_count)
        g.edges = np.column_stack((keys // g.V, keys % g.V))
        g.M = len(keys)
        g.bitset_threshold = BITSET_THRESHOLD
        g._indptr = g._indices = g._adjsets = g._bitrows = None
        return g

    def _build_csr(self):
        both = np.concatenate((self.edges, self.edges[:, ::-1])) if self.M else np.empty((0, 2), np.int64)
        order = np.lexsort((both[:, 1], both[:, 0]))
        both = both[order]
        self._indices = both[:, 1].copy()
        self._indptr = np.zeros(self.V + 1, dtype=np.int64)
        np.add.at(self._indptr, both[:, 0] + 1, 1)
        np.cumsum(self._indptr, out=self._indptr)

    def degrees(self) -> np.ndarray:
        d = np.zeros(self.V, dtype=np.int64)
        if self.M:
            d += np.bincount(self.edges[:, 0], minlength=self.V)
            d += np.bincount(self.edges[:, 1], minlength=self.V)
        return d

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def neighbors(self, v: int) -> np.ndarray:
        """Sorted neighbor ids of v."""
        if self._indptr is None:
            self._build_csr()
        return self._indices[self._indptr[v]:self._indptr[v + 1]]

    def adjacency_sets(self) -> list[set[int]]:
        if self._adjsets is None:
            sets = [set() for _ in range(self.V)]
            for u, v in self.edges.tolist():
                sets[u].add(v)
                sets[v].add(u)
            self._adjsets = sets
        return self._adjsets

    def has_edge(self, u: int, v: int) -> bool:
        nb = self.neighbors(u)
        i = np.searchsorted(nb, v)
        return i < len(nb) and nb[i] == v

    def bitrow(self, v: int) -> int:
        """Neighbors of v as a Python-int bitset (bit i set iff i adjacent to v)."""
        if self._bitrows is None:
            if self.V > self.bitset_threshold:
                raise InvariantViolation(
                    f"bitset rows unavailable for V={self.V} > {self.bitset_threshold}")
            rows = [0] * self.V
            for u, w in self.edges.tolist():
                rows[u] |= 1 << w
                rows[w] |= 1 << u
            self._bitrows = rows
        return self._bitrows[v]

    def common_neighbors(self, u: int, v: int) -> np.ndarray:
        if self.V <= self.bitset_threshold:
            inter = self.bitrow(u) & self.bitrow(v)
            out = []
            while inter:
                low = inter & -inter
                out.append(low.bit_length() - 1)
                inter ^= low
            return np.asarray(out, dtype=np.int64)
        return np.intersect1d(self.neighbors(u), self.neighbors(v))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph)
            and self.V == other.V
            and self.edges.shape == other.edges.shape
            and bool(np.array_equal(self.edges, other.edges))
        )

    def __repr__(self) -> str:
        return f"Graph(V={self.V}, M={self.M})"


def build_graph(vertex_count: int, edges) -> Graph:
    """Validated Graph constructor: rejects loops and out-of-range endpoints,
    collapses duplicate edges."""
    e = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges,
                   dtype=np.int64).reshape(-1, 2)
    if e.size:
        if e.min() < 0 or e.max() >= vertex_count:
            bad = e[(e < 0).any(axis=1) | (e >= vertex_count).any(axis=1)][0]
            raise EndpointOutOfRange(f"edge {tuple(bad)} outside [0, {vertex_count})")
        loops = e[:, 0] == e[:, 1]
        if loops.any():
            raise LoopEdge(f"loop at vertex {int(e[loops][0][0])}")
    return Graph(vertex_count, e)


@dataclass(frozen=True)
class SplitGraph:
    """A Graph plus a blob assignment: blob_of[v] in [0, n), max blob size <= k."""

    graph: Graph
    blob_of: np.ndarray
    n: int
    k: int

    def __post_init__(self):
        b = np.asarray(self.blob_of, dtype=np.int64)
        object.__setattr__(self, "blob_of", b)
        if len(b) != self.graph.V:
            raise InvariantViolation(
                f"{len(b)} blob assignments for {self.graph.V} vertices")
        if self.n < 1:
            raise InvariantViolation("blob count must be positive")
        if len(b) and (b.min() < 0 or b.max() >= self.n):
            raise InvariantViolation("blob id outside [0, n)")
        sizes = np.bincount(b, minlength=self.n)
        if (sizes == 0).any():
            raise InvariantViolation(f"blob {int(np.argmax(sizes == 0))} is empty")
        if sizes.max() > self.k:
            raise InvariantViolation(
                f"blob {int(sizes.argmax())} has {int(sizes.max())} vertices > k={self.k}")

    def blob_sizes(self) -> np.ndarray:
        return np.bincount(self.blob_of, minlength=self.n)

    def blob_members(self) -> list[np.ndarray]:
        order = np.argsort(self.blob_of, kind="stable")
        sizes = self.blob_sizes()
        return np.split(order, np.cumsum(sizes)[:-1])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SplitGraph)
            and self.n == other.n
            and self.k == other.k
            and self.graph == other.graph
            and bool(np.array_equal(self.blob_of, other.blob_of))
        )

    def __repr__(self) -> str:
        return f"SplitGraph(n={self.n}, k={self.k}, V={self.graph.V}, M={self.graph.M})"


@dataclass
class VerificationReport:
    mode: str
    passed: bool
    missing_pairs: list = field(default_factory=list)
    multi_pairs: int = 0
    internal_edges: int = 0
    max_blob_size: int = 0
    edge_count: int = 0

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "passed": self.passed,
            "missing_pairs": [list(p) for p in self.missing_pairs],
            "multi_pairs": self.multi_pairs,
            "internal_edges": self.internal_edges,
            "max_blob_size": self.max_blob_size,
            "edge_count": self.edge_count,
        }


def _cross_pair_keys(s: SplitGraph) -> tuple[np.ndarray, int]:
    """Encoded keys i*n+j (i<j) of the blob pairs crossed by each edge, plus
    the count of intra-blob edges."""
    e = s.graph.edges
    if not len(e):
        return np.empty(0, dtype=np.int64), 0
    bu = s.blob_of[e[:, 0]]
    bv = s.blob_of[e[:, 1]]
    cross = bu != bv
    i = np.minimum(bu, bv)[cross]
    j = np.maximum(bu, bv)[cross]
    return i * s.n + j, int((~cross).sum())


def _missing_pairs(present_sorted: np.ndarray, n: int) -> list[tuple[int, int]]:
    """All blob pairs absent from the sorted key array (row-chunked scan)."""
    missing = []
    for i in range(n - 1):
        lo = np.searchsorted(present_sorted, i * n)
        hi = np.searchsorted(present_sorted, (i + 1) * n)
        expected = np.arange(i * n + i + 1, (i + 1) * n, dtype=np.int64)
        for key in np.setdiff1d(expected, present_sorted[lo:hi]).tolist():
            missing.append((i, key - i * n))
    return missing


def verify_split(s: SplitGraph, mode: str = "strict") -> VerificationReport:
    """Check the split against the lax or strict contract; failures are
    reported, never raised."""
    if mode not in ("strict", "lax"):
        raise ParameterError(f"mode must be 'strict' or 'lax', got {mode!r}")
    keys, internal = _cross_pair_keys(s)
    present, counts = np.unique(keys, return_counts=True)
    total_pairs = s.n * (s.n - 1) // 2
    if len(present) == total_pairs:
        missing = []
    else:
        missing = _missing_pairs(present, s.n)
    multi = int((counts >= 2).sum())
    passed = not missing and (mode == "lax" or (multi == 0 and internal == 0))
    return VerificationReport(
        mode=mode,
        passed=passed,
        missing_pairs=missing,
        multi_pairs=multi,
        internal_edges=internal,
        max_blob_size=int(s.blob_sizes().max()),
        edge_count=s.graph.M,
    )


def prune_to_split(s: SplitGraph) -> SplitGraph:
    """Normalize a lax split to strict form.

    Deletes intra-blob edges and keeps, for every blob pair, exactly the
    lexicographically smallest crossing edge.  The result is a subgraph of
    the input on the same vertices and blobs, so any freeness property of
    the input is preserved.
    """
    e = s.graph.edges
    bu = s.blob_of[e[:, 0]] if len(e) else np.empty(0, np.int64)
    bv = s.blob_of[e[:, 1]] if len(e) else np.empty(0, np.int64)
    cross = bu != bv
    ec = e[cross]
    keys = np.minimum(bu, bv)[cross] * s.n + np.maximum(bu, bv)[cross]
    order = np.lexsort((ec[:, 1], ec[:, 0], keys))
    keys = keys[order]
    ec = ec[order]
    first = np.ones(len(keys), dtype=bool)
    first[1:] = keys[1:] != keys[:-1]
    total_pairs = s.n * (s.n - 1) // 2
    if int(first.sum()) != total_pairs:
        pair = _missing_pairs(keys[first], s.n)[0]
        raise NotALaxSplit(f"blob pair {pair} has no crossing edge")
    return SplitGraph(Graph(s.graph.V, ec[first]), s.blob_of, s.n, s.k)


def restrict_blobs(s: SplitGraph, n_target: int) -> SplitGraph:
    """Keep blobs 0..n_target-1 with their induced edges; vertices are
    relabeled contiguously in their original order."""
    if n_target < 1:
        raise ParameterError("n_target must be >= 1")
    if n_target > s.n:
        raise TargetTooLarge(f"n_target={n_target} exceeds blob count {s.n}")
    keep = s.blob_of < n_target
    new_id = np.cumsum(keep) - 1
    e = s.graph.edges
    ek = e[keep[e[:, 0]] & keep[e[:, 1]]] if len(e) else e
    return SplitGraph(
        Graph(int(keep.sum()), new_id[ek] if len(ek) else ek),
        s.blob_of[keep], n_target, s.k)


def contract_blobs(s: SplitGraph) -> Graph:
    """Simple graph on the blobs: two blobs adjacent iff some edge crosses them."""
    keys, _ = _cross_pair_keys(s)
    present = np.unique(keys)
    return Graph(s.n, np.column_stack((present // s.n, present % s.n)))


def two_coloring(g: Graph) -> np.ndarray | None:
    """A proper 2-coloring of the vertices (0/1 array), or None if none exists."""
    color = np.full(g.V, -1, dtype=np.int64)
    for start in range(g.V):
        if color[start] != -1:
            continue
        color[start] = 0
        stack = [start]
        while stack:
            v = stack.pop()
            for w in g.neighbors(v).tolist():
                if color[w] == -1:
                    color[w] = 1 - color[v]
                    stack.append(w)
                elif color[w] == color[v]:
                    return None
    return color


def connected_components(g: Graph) -> np.ndarray:
    """Component label per vertex; labels are dense, ordered by smallest member."""
    label = np.full(g.V, -1, dtype=np.int64)
    current = 0
    for start in range(g.V):
        if label[start] != -1:
            continue
        label[start] = current
        stack = [start]
        while stack:
            v = stack.pop()
            for w in g.neighbors(v).tolist():
                if label[w] == -1:
                    label[w] = current
                    stack.append(w)
        current += 1
    return label


# ---------------------------------------------------------------------------
# Text formats.  Both are UTF-8 with LF line endings; '#' lines are comments.
#
#   splitgraph 1                       graph 1
#   n <n> k <k> v <V> e <E>            v <V> e <E>
#   b <vid> <blobid>   (vid 0..V-1)    e <u> <v>  (u < v, lex sorted)
#   e <u> <v>          (u < v, lex sorted)
# ---------------------------------------------------------------------------

def _edge_lines(g: Graph) -> list[str]:
    return [f"e {u} {v}" for u, v in g.edges.tolist()]


def write_split(s: SplitGraph, path) -> None:
    lines = [
        "splitgraph 1",
        f"n {s.n} k {s.k} v {s.graph.V} e {s.graph.M}",
    ]
    lines.extend(f"b {v} {b}" for v, b in enumerate(s.blob_of.tolist()))
    lines.extend(_edge_lines(s.graph))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def write_graph(g: Graph, path) -> None:
    lines = ["graph 1", f"v {g.V} e {g.M}"]
    lines.extend(_edge_lines(g))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


class _LineReader:
    def __init__(self, path):
        self.rows = []  # (lineno, tokens)
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, start=1):
                text = raw.strip()
                if not text or text.startswith("#"):
                    continue
                self.rows.append((lineno, text.split()))
        self.pos = 0

    def next(self, what: str) -> tuple[int, list[str]]:
        if self.pos >= len(self.rows):
            last = self.rows[-1][0] if self.rows else 0
            raise ParseError(last + 1, f"unexpected end of file, expected {what}")
        row = self.rows[self.pos]
        self.pos += 1
        return row

    def done(self) -> None:
        if self.pos < len(self.rows):
            lineno, toks = self.rows[self.pos]
            raise ParseError(lineno, f"unexpected extra line {' '.join(toks)!r}")


def _int_field(lineno: int, token: str, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(lineno, f"{what} is not an integer: {token!r}") from None


def _read_edges(reader: _LineReader, count: int, vertex_count: int) -> np.ndarray:
    edges = np.empty((count, 2), dtype=np.int64)
    prev = (-1, -1)
    for idx in range(count):
        lineno, toks = reader.next("an 'e <u> <v>' line")
        if len(toks) != 3 or toks[0] != "e":
            raise ParseError(lineno, f"expected 'e <u> <v>', got {' '.join(toks)!r}")
        u = _int_field(lineno, toks[1], "endpoint")
        v = _int_field(lineno, toks[2], "endpoint")
        if not (0 <= u < vertex_count and 0 <= v < vertex_count):
            raise ParseError(lineno, f"endpoint outside [0, {vertex_count})")
        if u >= v:
            raise ParseError(lineno, f"edge ({u}, {v}) must have u < v")
        if (u, v) <= prev:
            raise ParseError(lineno, "edges out of lexicographic order or duplicated")
        prev = (u, v)
        edges[idx] = (u, v)
    return edges


def read_split(path) -> SplitGraph:
    reader = _LineReader(path)
    lineno, toks = reader.next("'splitgraph 1' header")
    if toks != ["splitgraph", "1"]:
        raise ParseError(lineno, "expected header 'splitgraph 1'")
    lineno, toks = reader.next("'n <n> k <k> v <V> e <E>' line")
    if len(toks) != 8 or toks[0] != "n" or toks[2] != "k" or toks[4] != "v" or toks[6] != "e":
        raise ParseError(lineno, "expected 'n <n> k <k> v <V> e <E>'")
    n = _int_field(lineno, toks[1], "n")
    k = _int_field(lineno, toks[3], "k")
    vcount = _int_field(lineno, toks[5], "vertex count")
    ecount = _int_field(lineno, toks[7], "edge count")
    blob_of = np.empty(vcount, dtype=np.int64)
    for vid in range(vcount):
        lineno, toks = reader.next("a 'b <vid> <blobid>' line")
        if len(toks) != 3 or toks[0] != "b":
            raise ParseError(lineno, f"expected 'b <vid> <blobid>', got {' '.join(toks)!r}")
        got = _int_field(lineno, toks[1], "vertex id")
        if got != vid:
            raise ParseError(lineno, f"vertex ids must ascend from 0; expected {vid}, got {got}")
        blob = _int_field(lineno, toks[2], "blob id")
        if not 0 <= blob < n:
            raise ParseError(lineno, f"blob id {blob} outside [0, {n})")
        blob_of[vid] = blob
    edges = _read_edges(reader, ecount, vcount)
    reader.done()
    return SplitGraph(Graph(vcount, edges), blob_of, n, k)


def read_graph(path) -> Graph:
    reader = _LineReader(path)
    lineno, toks = reader.next("'graph 1' header")
    if toks != ["graph", "1"]:
        raise ParseError(lineno, "expected header 'graph 1'")
    lineno, toks = reader.next("'v <V> e <E>' line")
    if len(toks) != 4 or toks[0] != "v" or toks[2] != "e":
        raise ParseError(lineno, "expected 'v <V> e <E>'")
    vcount = _int_field(lineno, toks[1], "vertex count")
    ecount = _int_field(lineno, toks[3], "edge count")
    edges = _read_edges(reader, ecount, vcount)
    reader.done()
    return Graph(vcount, edges)
