"""Weighted bipartite graphs with dense integer indexing.

A graph has a left side and a right side.  External vertex ids (any hashable
tokens) are mapped to dense integer indices per side at construction time;
everything downstream works with index sets.  Adjacency is stored CSR-style
in numpy arrays, mirrored on both sides, with neighbor lists sorted by index
so that iteration order is reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Hashable, Iterable, NamedTuple, Sequence

import numpy as np

from .errors import (
    EmptyGraph,
    EmptySide,
    NegativeWeight,
    SideViolation,
    UnknownVertex,
)

LEFT = "L"
RIGHT = "R"


def opposite(side: str) -> str:
    return RIGHT if side == LEFT else LEFT


@dataclass(frozen=True)
class Subgraph:
    """A vertex pair (left, right) together with its crossing weight and density.

    density is edge_weight / sqrt(|left| * |right|); both sets are index sets
    of the graph the subgraph was measured on.
    """

    left: frozenset
    right: frozenset
    edge_weight: float
    density: float

    @property
    def sizes(self) -> tuple[int, int]:
        return (len(self.left), len(self.right))


class GraphStats(NamedTuple):
    vertex_count: int
    edge_weight: float
    max_degree: float
    max_fanout: int
    avg_degree: float


class BipartiteGraph:
    """Immutable weighted bipartite graph.

    Construct through build_bipartite, from_directed, or restrict; the raw
    constructor expects already merged, validated edge arrays.  Vertices with
    no incident edges are legal (restriction can produce them) but the graph
    as a whole always carries at least one edge.
    """

    __slots__ = (
        "_left_ids",
        "_right_ids",
        "_left_index",
        "_right_index",
        "_lptr",
        "_lnbr",
        "_lwt",
        "_rptr",
        "_rnbr",
        "_rwt",
        "_total_weight",
        "_max_degree",
        "_max_fanout",
    )

    def __init__(self, left_ids, right_ids, l_arr, r_arr, w_arr):
        nl, nr = len(left_ids), len(right_ids)
        if len(w_arr) == 0:
            raise EmptyGraph("graph has no edges")
        self._left_ids = tuple(left_ids)
        self._right_ids = tuple(right_ids)
        self._left_index = {tok: k for k, tok in enumerate(self._left_ids)}
        self._right_index = {tok: k for k, tok in enumerate(self._right_ids)}

        l_arr = np.asarray(l_arr, dtype=np.int64)
        r_arr = np.asarray(r_arr, dtype=np.int64)
        w_arr = np.asarray(w_arr, dtype=np.float64)

        order = np.lexsort((r_arr, l_arr))
        self._lnbr = r_arr[order]
        self._lwt = w_arr[order]
        counts = np.bincount(l_arr, minlength=nl)
        self._lptr = np.concatenate(([0], np.cumsum(counts)))

        order = np.lexsort((l_arr, r_arr))
        self._rnbr = l_arr[order]
        self._rwt = w_arr[order]
        counts = np.bincount(r_arr, minlength=nr)
        self._rptr = np.concatenate(([0], np.cumsum(counts)))

        self._total_weight = float(w_arr.sum())
        ldeg = np.bincount(l_arr, weights=w_arr, minlength=nl)
        rdeg = np.bincount(r_arr, weights=w_arr, minlength=nr)
        self._max_degree = float(max(ldeg.max(initial=0.0), rdeg.max(initial=0.0)))
        lfan = np.diff(self._lptr)
        rfan = np.diff(self._rptr)
        self._max_fanout = int(max(lfan.max(initial=0), rfan.max(initial=0)))

    # ---- size and id accessors -------------------------------------------------

    @property
    def left_count(self) -> int:
        return len(self._left_ids)

    @property
    def right_count(self) -> int:
        return len(self._right_ids)

    @property
    def vertex_count(self) -> int:
        return len(self._left_ids) + len(self._right_ids)

    @property
    def total_weight(self) -> float:
        """Sum of merged edge weights (edge count for a unit-weight graph)."""
        return self._total_weight

    @property
    def max_degree(self) -> float:
        """Largest weighted degree over vertices of both sides."""
        return self._max_degree

    @property
    def max_fanout(self) -> int:
        """Largest neighbor-list length over vertices of both sides."""
        return self._max_fanout

    @property
    def min_weight(self) -> float:
        """Smallest merged edge weight (always positive)."""
        return float(self._lwt.min()) if len(self._lwt) else 0.0

    def side_count(self, side: str) -> int:
        return self.left_count if side == LEFT else self.right_count

    def left_id(self, idx: int):
        return self._left_ids[idx]

    def right_id(self, idx: int):
        return self._right_ids[idx]

    def vertex_id(self, side: str, idx: int):
        return self._left_ids[idx] if side == LEFT else self._right_ids[idx]

    def find_vertex(self, token: Hashable, side: str | None = None) -> tuple[str, int]:
        """Resolve an external id to (side, index).

        With side=None the left side is searched first; a token present on
        both sides resolves to its left copy.
        """
        if side in (None, LEFT) and token in self._left_index:
            return (LEFT, self._left_index[token])
        if side in (None, RIGHT) and token in self._right_index:
            return (RIGHT, self._right_index[token])
        raise UnknownVertex(f"vertex {token!r} not found" + (f" on side {side}" if side else ""))

    def left_indices(self, tokens: Iterable[Hashable]) -> frozenset:
        out = set()
        for tok in tokens:
            if tok not in self._left_index:
                raise UnknownVertex(f"left vertex {tok!r} not found")
            out.add(self._left_index[tok])
        return frozenset(out)

    def right_indices(self, tokens: Iterable[Hashable]) -> frozenset:
        out = set()
        for tok in tokens:
            if tok not in self._right_index:
                raise UnknownVertex(f"right vertex {tok!r} not found")
            out.add(self._right_index[tok])
        return frozenset(out)

    # ---- adjacency -------------------------------------------------------------

    def neighbors(self, side: str, idx: int) -> tuple[np.ndarray, np.ndarray]:
        """Neighbor indices (on the opposite side) and weights, sorted by index."""
        if side == LEFT:
            lo, hi = self._lptr[idx], self._lptr[idx + 1]
            return self._lnbr[lo:hi], self._lwt[lo:hi]
        lo, hi = self._rptr[idx], self._rptr[idx + 1]
        return self._rnbr[lo:hi], self._rwt[lo:hi]

    def fanout(self, side: str, idx: int) -> int:
        if side == LEFT:
            return int(self._lptr[idx + 1] - self._lptr[idx])
        return int(self._rptr[idx + 1] - self._rptr[idx])

    def weighted_degree(self, side: str, idx: int) -> float:
        _, wt = self.neighbors(side, idx)
        return float(wt.sum())

    def edges(self):
        """Yield (left_idx, right_idx, weight) sorted by (left, right)."""
        lnbr = self._lnbr.tolist()
        lwt = self._lwt.tolist()
        ptr = self._lptr.tolist()
        for u in range(self.left_count):
            for pos in range(ptr[u], ptr[u + 1]):
                yield u, lnbr[pos], lwt[pos]

    def csr_arrays(self, side: str):
        """Raw (indptr, indices, weights) for one side; treat as read-only."""
        if side == LEFT:
            return self._lptr, self._lnbr, self._lwt
        return self._rptr, self._rnbr, self._rwt

    def __repr__(self):
        return (
            f"BipartiteGraph(left={self.left_count}, right={self.right_count}, "
            f"weight={self._total_weight:g})"
        )


def _merge_indexed_edges(nl, nr, l_list, r_list, w_list):
    """Merge duplicate (l, r) pairs by weight sum; returns sorted arrays."""
    l_arr = np.asarray(l_list, dtype=np.int64)
    r_arr = np.asarray(r_list, dtype=np.int64)
    w_arr = np.asarray(w_list, dtype=np.float64)
    keys = l_arr * np.int64(max(nr, 1)) + r_arr
    uniq, inverse = np.unique(keys, return_inverse=True)
    merged_w = np.bincount(inverse, weights=w_arr, minlength=len(uniq))
    merged_l = uniq // max(nr, 1)
    merged_r = uniq % max(nr, 1)
    return merged_l, merged_r, merged_w


def build_bipartite(edges) -> BipartiteGraph:
    """Build a graph from (left_id, right_id, weight) triples.

    Ids on the two sides are independent namespaces and are assigned dense
    indices in first-appearance order.  Duplicate pairs merge by summing
    weights; zero-weight rows are dropped.

    Raises:
        NegativeWeight: if any weight is negative or not finite.
        EmptyGraph: if no positive-weight edge remains.
    """
    left_index: dict = {}
    right_index: dict = {}
    left_ids: list = []
    right_ids: list = []
    l_list: list[int] = []
    r_list: list[int] = []
    w_list: list[float] = []
    for u, v, w in edges:
        w = float(w)
        if not (w >= 0.0) or math.isinf(w):
            raise NegativeWeight(f"edge ({u!r}, {v!r}) has invalid weight {w!r}")
        if w == 0.0:
            continue
        li = left_index.get(u)
        if li is None:
            li = left_index[u] = len(left_ids)
            left_ids.append(u)
        ri = right_index.get(v)
        if ri is None:
            ri = right_index[v] = len(right_ids)
            right_ids.append(v)
        l_list.append(li)
        r_list.append(ri)
        w_list.append(w)
    if not w_list:
        raise EmptyGraph("no positive-weight edges")
    l_arr, r_arr, w_arr = _merge_indexed_edges(
        len(left_ids), len(right_ids), l_list, r_list, w_list
    )
    return BipartiteGraph(left_ids, right_ids, l_arr, r_arr, w_arr)


def from_directed(arcs) -> BipartiteGraph:
    """Turn a directed graph into its bipartite form.

    Both sides carry the full vertex set; an arc x -> y becomes an edge
    between the left copy of x and the right copy of y.  Self-loops are
    ordinary edges here.  Duplicate arcs merge by weight sum.
    """
    index: dict = {}
    ids: list = []
    rows = []
    for x, y, w in arcs:
        w = float(w)
        if not (w >= 0.0) or math.isinf(w):
            raise NegativeWeight(f"arc ({x!r}, {y!r}) has invalid weight {w!r}")
        for tok in (x, y):
            if tok not in index:
                index[tok] = len(ids)
                ids.append(tok)
        rows.append((index[x], index[y], w))
    l_list = [a for a, _, w in rows if w > 0.0]
    r_list = [b for _, b, w in rows if w > 0.0]
    w_list = [w for _, _, w in rows if w > 0.0]
    if not w_list:
        raise EmptyGraph("no positive-weight arcs")
    l_arr, r_arr, w_arr = _merge_indexed_edges(len(ids), len(ids), l_list, r_list, w_list)
    return BipartiteGraph(ids, ids, l_arr, r_arr, w_arr)


def _validate_side_set(g: BipartiteGraph, side: str, vertices) -> frozenset:
    vs = frozenset(vertices)
    count = g.side_count(side)
    for v in vs:
        if not isinstance(v, (int, np.integer)) or not 0 <= v < count:
            raise SideViolation(f"index {v!r} is not a valid side-{side} vertex")
    return vs


def edge_weight_between(g: BipartiteGraph, left_set, right_set) -> float:
    """Total weight of edges with one endpoint in each set.

    Iterates adjacency from whichever set has the smaller total fanout.
    Empty sets are allowed and contribute zero.
    """
    ls = _validate_side_set(g, LEFT, left_set)
    rs = _validate_side_set(g, RIGHT, right_set)
    if not ls or not rs:
        return 0.0
    left_fan = sum(g.fanout(LEFT, u) for u in ls)
    right_fan = sum(g.fanout(RIGHT, v) for v in rs)
    total = 0.0
    if left_fan <= right_fan:
        probe, members = sorted(ls), rs
        side = LEFT
    else:
        probe, members = sorted(rs), ls
        side = RIGHT
    for u in probe:
        nbr, wt = g.neighbors(side, u)
        for v, w in zip(nbr.tolist(), wt.tolist()):
            if v in members:
                total += w
    return total


def density(g: BipartiteGraph, left_set, right_set) -> Subgraph:
    """Crossing weight over the geometric mean of the set sizes.

    Raises EmptySide if either set is empty.
    """
    ls = _validate_side_set(g, LEFT, left_set)
    rs = _validate_side_set(g, RIGHT, right_set)
    if not ls or not rs:
        raise EmptySide("density requires both sets nonempty")
    e = edge_weight_between(g, ls, rs)
    d = e / math.sqrt(len(ls) * len(rs))
    return Subgraph(ls, rs, e, d)


def ratio_density(g: BipartiteGraph, left_set, right_set) -> float:
    """Crossing weight over the total number of chosen vertices.

    One side may be empty; raises EmptySide only when both are.
    """
    ls = _validate_side_set(g, LEFT, left_set)
    rs = _validate_side_set(g, RIGHT, right_set)
    if not ls and not rs:
        raise EmptySide("ratio_density requires at least one vertex")
    e = edge_weight_between(g, ls, rs) if (ls and rs) else 0.0
    return e / (len(ls) + len(rs))


def restrict(g: BipartiteGraph, left_set, right_set) -> BipartiteGraph:
    """Induced subgraph on the chosen sets, keeping only crossing edges.

    Every chosen vertex survives under its original id, including vertices
    left with no edges.  Raises EmptyGraph if no edge survives.
    """
    ls = _validate_side_set(g, LEFT, left_set)
    rs = _validate_side_set(g, RIGHT, right_set)
    left_sorted = sorted(ls)
    right_sorted = sorted(rs)
    new_left = {u: k for k, u in enumerate(left_sorted)}
    new_right = {v: k for k, v in enumerate(right_sorted)}
    l_list, r_list, w_list = [], [], []
    for u in left_sorted:
        nbr, wt = g.neighbors(LEFT, u)
        for v, w in zip(nbr.tolist(), wt.tolist()):
            if v in rs:
                l_list.append(new_left[u])
                r_list.append(new_right[v])
                w_list.append(w)
    if not w_list:
        raise EmptyGraph("restriction removed every edge")
    return BipartiteGraph(
        [g.left_id(u) for u in left_sorted],
        [g.right_id(v) for v in right_sorted],
        l_list,
        r_list,
        w_list,
    )


def degree_stats(g: BipartiteGraph) -> GraphStats:
    """Vertex count, total edge weight, max weighted degree, max fanout, average degree."""
    n = g.vertex_count
    m = g.total_weight
    return GraphStats(n, m, g.max_degree, g.max_fanout, 2.0 * m / n)
