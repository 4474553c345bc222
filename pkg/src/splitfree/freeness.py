"""Forbidden-subgraph checks.

`contains_subgraph` is the exhaustive backtracking oracle (ground truth for
small patterns).  `is_c4_free` and `is_kst_free` are the fast family
checkers; their verdicts agree with the oracle, which the test suite asserts
on a seeded random corpus.  All containment is plain subgraph containment,
never induced.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .errors import GrammarError, InstanceTooLarge, ParameterError, PatternTooLarge
from .graphs import Graph, build_graph, read_graph

ORACLE_PATTERN_CAP = 12   # contains_subgraph is for desk-scale cross-checks
KST_ENUM_CAP = 1 << 12    # host-size cap for the exhaustive s >= 3 search


@dataclass(frozen=True)
class ForbiddenGraph:
    kind: str          # cycle | biclique | star | path | explicit
    params: tuple
    graph: Graph
    spec: str

    def __str__(self) -> str:
        return self.spec


def _cycle(k: int) -> Graph:
    return build_graph(k, [(i, (i + 1) % k) for i in range(k)])


def _biclique(s: int, t: int) -> Graph:
    return build_graph(s + t, [(i, s + j) for i in range(s) for j in range(t)])


def _path(k: int) -> Graph:
    return build_graph(k, [(i, i + 1) for i in range(k - 1)])


def parse_forbidden_spec(spec: str) -> ForbiddenGraph:
    """Parse `C<k>` | `K<s>,<t>` | `S<t>` | `P<k>` | `file:<path>`."""
    if m := re.fullmatch(r"C(\d+)", spec):
        k = int(m.group(1))
        if k < 3:
            raise ParameterError(f"cycle length must be >= 3, got {k}")
        return ForbiddenGraph("cycle", (k,), _cycle(k), spec)
    if m := re.fullmatch(r"K(\d+),(\d+)", spec):
        s, t = int(m.group(1)), int(m.group(2))
        if not 1 <= s <= t:
            raise ParameterError(f"biclique needs 1 <= s <= t, got ({s}, {t})")
        return ForbiddenGraph("biclique", (s, t), _biclique(s, t), spec)
    if m := re.fullmatch(r"S(\d+)", spec):
        t = int(m.group(1))
        if t < 1:
            raise ParameterError(f"star needs t >= 1, got {t}")
        return ForbiddenGraph("star", (t,), _biclique(1, t), spec)
    if m := re.fullmatch(r"P(\d+)", spec):
        k = int(m.group(1))
        if k < 2:
            raise ParameterError(f"path needs >= 2 vertices, got {k}")
        return ForbiddenGraph("path", (k,), _path(k), spec)
    if m := re.fullmatch(r"file:(.+)", spec):
        return ForbiddenGraph("explicit", (), read_graph(m.group(1)), spec)
    raise GrammarError(f"unrecognized forbidden-graph spec {spec!r}")


# ---------------------------------------------------------------------------
# Backtracking oracle
# ---------------------------------------------------------------------------

def contains_subgraph(g: Graph, h: ForbiddenGraph,
                      cap: int = ORACLE_PATTERN_CAP) -> dict[int, int] | None:
    """First embedding of h into g (pattern vertex -> host vertex), or None.

    Pattern vertices are tried in a static high-degree-first order; host
    candidates are pruned by degree and by adjacency to already-placed
    pattern neighbors, and scanned in ascending id order, so the returned
    embedding is deterministic.
    """
    hg = h.graph
    if hg.V > cap:
        raise PatternTooLarge(f"pattern has {hg.V} > {cap} vertices")
    if hg.V > g.V or hg.M > g.M:
        return None

    h_adj = hg.adjacency_sets()
    h_deg = [len(a) for a in h_adj]
    order = sorted(range(hg.V), key=lambda v: (-h_deg[v], v))
    pos_of = {v: i for i, v in enumerate(order)}
    # pattern neighbors of order[i] that are placed before step i
    earlier = [[w for w in h_adj[v] if pos_of[w] < i] for i, v in enumerate(order)]

    g_adj = g.adjacency_sets()
    g_deg = g.degrees()
    image = [-1] * hg.V
    used: set[int] = set()

    def place(i: int) -> bool:
        if i == hg.V:
            return True
        hv = order[i]
        if earlier[i]:
            pools = [g_adj[image[w]] for w in earlier[i]]
            pools.sort(key=len)
            cands = sorted(pools[0].intersection(*pools[1:])) if len(pools) > 1 \
                else sorted(pools[0])
        else:
            cands = range(g.V)
        need = h_deg[hv]
        for gv in cands:
            if gv in used or g_deg[gv] < need:
                continue
            image[hv] = gv
            used.add(gv)
            if place(i + 1):
                return True
            used.discard(gv)
            image[hv] = -1
        return False

    if place(0):
        mapping = {hv: image[hv] for hv in range(hg.V)}
        assert verify_embedding(g, h, mapping)
        return mapping
    return None


def verify_embedding(g: Graph, h: ForbiddenGraph, mapping: dict[int, int]) -> bool:
    """Independent witness check: injectivity plus one adjacency query per
    pattern edge."""
    if len(set(mapping.values())) != h.graph.V or len(mapping) != h.graph.V:
        return False
    return all(g.has_edge(mapping[u], mapping[v]) for u, v in h.graph.edges.tolist())


# ---------------------------------------------------------------------------
# Family checkers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BicliqueWitness:
    """Vertex sets with every left-right pair adjacent in the host."""
    left: tuple[int, ...]
    right: tuple[int, ...]


def _wedge_keys(g: Graph) -> np.ndarray:
    """Encoded endpoint pairs u*V+w (u < w) of all 2-edge paths in g; a pair
    with c common neighbors appears exactly c times."""
    chunks = []
    tri_cache: dict[int, tuple[np.ndarray, np.ndarray]] = {}
    for center in range(g.V):
        nb = g.neighbors(center)
        d = len(nb)
        if d < 2:
            continue
        if d not in tri_cache:
            tri_cache[d] = np.triu_indices(d, k=1)
        iu, iw = tri_cache[d]
        chunks.append(nb[iu] * g.V + nb[iw])
    if not chunks:
        return np.empty(0, dtype=np.int64)
    return np.concatenate(chunks)


def _pair_with_common_at_least(g: Graph, t: int) -> tuple[int, int] | None:
    """Lexicographically smallest vertex pair with >= t common neighbors."""
    keys = np.sort(_wedge_keys(g))
    if t == 1:
        hit = len(keys) > 0
        idx = 0
    else:
        runs = keys[t - 1:] == keys[: len(keys) - (t - 1)]
        hit = bool(runs.any())
        idx = int(np.argmax(runs)) if hit else 0
    if not hit:
        return None
    key = int(keys[idx])
    return key // g.V, key % g.V


def is_c4_free(g: Graph) -> BicliqueWitness | None:
    """None iff no two vertices share two common neighbors; otherwise the
    lexicographically first offending pair with two shared neighbors."""
    pair = _pair_with_common_at_least(g, 2)
    if pair is None:
        return None
    u, v = pair
    common = g.common_neighbors(u, v)[:2]
    return BicliqueWitness((u, v), (int(common[0]), int(common[1])))


def _kst_enumerate(g: Graph, s: int, t: int) -> BicliqueWitness | None:
    """Exhaustive search for s vertices with t common neighbors via Python-int
    bitset intersections, in ascending lexicographic order."""
    if g.V > KST_ENUM_CAP:
        raise InstanceTooLarge(
            f"exhaustive K_{{s,t}} search capped at {KST_ENUM_CAP} vertices, host has {g.V}")
    deg = g.degrees()
    candidates = [v for v in range(g.V) if deg[v] >= t]

    def extend(chosen: list[int], common: int, start: int) -> BicliqueWitness | None:
        if len(chosen) == s:
            right = []
            bits = common
            while bits and len(right) < t:
                low = bits & -bits
                right.append(low.bit_length() - 1)
                bits ^= low
            return BicliqueWitness(tuple(chosen), tuple(right))
        for idx in range(start, len(candidates)):
            v = candidates[idx]
            nxt = common & g.bitrow(v) if chosen else g.bitrow(v)
            if nxt.bit_count() >= t:
                found = extend(chosen + [v], nxt, idx + 1)
                if found is not None:
                    return found
        return None

    return extend([], 0, 0)


def is_kst_free(g: Graph, s: int, t: int) -> BicliqueWitness | None:
    """None iff g contains no K_{s,t}; otherwise a biclique witness.

    s=1 reduces to a max-degree check, s=2 to common-neighbor counting over
    vertex pairs, s>=3 to capped exhaustive enumeration.
    """
    if not 1 <= s <= t:
        raise ParameterError(f"need 1 <= s <= t, got ({s}, {t})")
    if s == 1:
        deg = g.degrees()
        over = np.flatnonzero(deg >= t)
        if not len(over):
            return None
        v = int(over[0])
        return BicliqueWitness((v,), tuple(g.neighbors(v)[:t].tolist()))
    if s == 2:
        pair = _pair_with_common_at_least(g, t)
        if pair is None:
            return None
        common = g.common_neighbors(*pair)[:t]
        return BicliqueWitness(pair, tuple(int(w) for w in common))
    return _kst_enumerate(g, s, t)


# ---------------------------------------------------------------------------
# Dispatch
# ---------------------------------------------------------------------------

def _biclique_mapping(s: int, w: BicliqueWitness) -> dict[int, int]:
    mapping = {i: gv for i, gv in enumerate(w.left)}
    mapping.update({s + j: gv for j, gv in enumerate(w.right)})
    return mapping


def check_forbidden(g: Graph, h: ForbiddenGraph) -> dict[int, int] | None:
    """Embedding of h in g (None if g is h-free), using the fastest applicable
    checker; every witness is re-verified before being returned."""
    mapping = None
    if h.kind == "cycle" and h.params[0] == 4:
        w = is_c4_free(g)
        if w is not None:
            (u, v), (w1, w2) = w.left, w.right
            mapping = {0: u, 1: w1, 2: v, 3: w2}
    elif h.kind in ("biclique", "star"):
        s, t = h.params if h.kind == "biclique" else (1, h.params[0])
        w = is_kst_free(g, s, t)
        if w is not None:
            mapping = _biclique_mapping(s, w)
    else:
        return contains_subgraph(g, h)
    if mapping is not None:
        assert verify_embedding(g, h, mapping)
    return mapping


def witness_json(mapping: dict[int, int] | None) -> dict:
    if mapping is None:
        return {"found": False, "mapping": []}
    return {"found": True, "mapping": [[hv, gv] for hv, gv in sorted(mapping.items())]}
