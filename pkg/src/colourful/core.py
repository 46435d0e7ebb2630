"""Coloured graph model, connectivity and solution validators.

Vertices are dense ids ``0..n-1``, colours are dense ids ``0..num_colours-1``
and every edge is stored as a ``(u, v)`` pair with ``u < v``. Graphs are
immutable; the heavy lifting is done on numpy arrays so that the same type
serves million-vertex benchmark instances and tiny test fixtures.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components as _cc_labels

from .errors import GraphError, InvalidPartition, InvalidSolution

Edge = tuple[int, int]
EdgeSet = frozenset[Edge]
Partition = list[frozenset[int]]


def canonical_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


class ColouredGraph:
    """An undirected, simple, vertex-coloured graph.

    >>> g = ColouredGraph([0, 1, 0], [(1, 0), (1, 2)])
    >>> g.edge_list()
    [(0, 1), (1, 2)]
    >>> g.num_colours
    2
    """

    __slots__ = ("colours", "edges", "num_colours", "__dict__")

    def __init__(
        self,
        colours: Sequence[int] | np.ndarray,
        edges: Iterable[Sequence[int]] | np.ndarray = (),
        num_colours: int | None = None,
    ):
        col = np.array(colours, dtype=np.int64).reshape(-1)
        if col.size and col.min() < 0:
            raise GraphError("colour ids must be non-negative")
        top = int(col.max()) + 1 if col.size else 0
        if num_colours is None:
            num_colours = top
        elif num_colours < top:
            raise GraphError(f"colour id {top - 1} out of range for {num_colours} colours")

        if isinstance(edges, np.ndarray):
            e = edges.astype(np.int64, copy=True).reshape(-1, 2)
        else:
            e = np.array([tuple(x) for x in edges], dtype=np.int64).reshape(-1, 2)
        n = col.size
        if e.size:
            if e.min() < 0 or e.max() >= n:
                raise GraphError("edge endpoint out of range")
            if np.any(e[:, 0] == e[:, 1]):
                bad = int(np.flatnonzero(e[:, 0] == e[:, 1])[0])
                raise GraphError(f"self-loop at vertex {int(e[bad, 0])}")
            e = np.sort(e, axis=1)
            keys = e[:, 0] * n + e[:, 1]
            uniq, counts = np.unique(keys, return_counts=True)
            if np.any(counts > 1):
                k = int(uniq[np.argmax(counts > 1)])
                raise GraphError(f"duplicate edge {(k // n, k % n)}")
        self.colours = _readonly(col)
        self.edges = _readonly(e)
        self.num_colours = int(num_colours)

    @classmethod
    def _trusted(cls, colours: np.ndarray, edges: np.ndarray, num_colours: int) -> "ColouredGraph":
        # Skips validation; callers guarantee canonical, duplicate-free edges.
        g = cls.__new__(cls)
        g.colours = colours
        g.edges = _readonly(np.ascontiguousarray(edges, dtype=np.int64).reshape(-1, 2))
        g.num_colours = num_colours
        return g

    @property
    def n(self) -> int:
        return int(self.colours.size)

    @property
    def m(self) -> int:
        return int(self.edges.shape[0])

    def colour(self, v: int) -> int:
        return int(self.colours[v])

    def edge_list(self) -> list[Edge]:
        return [tuple(e) for e in self.edges.tolist()]

    def edge_set(self) -> EdgeSet:
        return frozenset(self.edge_list())

    @cached_property
    def degrees(self) -> np.ndarray:
        return _readonly(np.bincount(self.edges.reshape(-1), minlength=self.n))

    @cached_property
    def csr(self) -> csr_matrix:
        """Symmetric adjacency matrix with sorted column indices."""
        n = self.n
        u, v = self.edges[:, 0], self.edges[:, 1]
        rows = np.concatenate([u, v])
        cols = np.concatenate([v, u])
        mat = csr_matrix((np.ones(rows.size, dtype=np.int8), (rows, cols)), shape=(n, n))
        mat.sort_indices()
        return mat

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        indptr, indices = self.csr.indptr.tolist(), self.csr.indices.tolist()
        return tuple(tuple(indices[indptr[v]:indptr[v + 1]]) for v in range(self.n))

    def neighbours(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def edge_keys(self) -> np.ndarray:
        return self.edges[:, 0] * self.n + self.edges[:, 1]

    def remove_edges(self, s: Iterable[Edge]) -> "ColouredGraph":
        """Return ``g - s``; raise :class:`InvalidSolution` if an edge is missing."""
        drop = _edge_array(s)
        if drop.size == 0:
            return self
        keys = self.edge_keys()
        dk = drop[:, 0] * self.n + drop[:, 1]
        present = np.isin(dk, keys)
        if not present.all():
            bad = tuple(int(x) for x in drop[np.argmin(present)])
            raise InvalidSolution(f"edge {bad} is not in the graph")
        keep = ~np.isin(keys, dk)
        return ColouredGraph._trusted(self.colours, self.edges[keep], self.num_colours)

    def induced(self, vertices: Iterable[int]) -> tuple["ColouredGraph", list[int]]:
        """Induced subgraph, relabelled densely; also returns the old ids in order."""
        old = sorted(set(vertices))
        idx = {v: i for i, v in enumerate(old)}
        edges = [(idx[u], idx[v]) for u, v in self.edge_list() if u in idx and v in idx]
        sub = ColouredGraph([self.colour(v) for v in old], edges, self.num_colours)
        return sub, old

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ColouredGraph):
            return NotImplemented
        return (
            self.num_colours == other.num_colours
            and np.array_equal(self.colours, other.colours)
            and np.array_equal(self.edges, other.edges)
        )

    def __hash__(self) -> int:
        return hash((self.num_colours, self.colours.tobytes(), self.edges.tobytes()))

    def __repr__(self) -> str:
        return f"ColouredGraph(n={self.n}, m={self.m}, colours={self.num_colours})"


def _edge_array(s: Iterable[Edge]) -> np.ndarray:
    if isinstance(s, np.ndarray):
        arr = s.astype(np.int64).reshape(-1, 2)
    else:
        arr = np.array([tuple(e) for e in s], dtype=np.int64).reshape(-1, 2)
    return np.sort(arr, axis=1) if arr.size else arr


def component_labels(g: ColouredGraph) -> tuple[int, np.ndarray]:
    """Number of components and a per-vertex component label array."""
    if g.n == 0:
        return 0, np.zeros(0, dtype=np.int64)
    k, labels = _cc_labels(g.csr, directed=False)
    return int(k), labels


def connected_components(g: ColouredGraph) -> list[frozenset[int]]:
    """Maximal connected vertex sets, ordered by their smallest vertex."""
    k, labels = component_labels(g)
    if k == 0:
        return []
    order = np.argsort(labels, kind="stable")
    bounds = np.flatnonzero(np.diff(labels[order])) + 1
    groups = np.split(order, bounds)
    comps = [frozenset(grp.tolist()) for grp in groups]
    comps.sort(key=min)
    return comps


def colour_conflict(g: ColouredGraph) -> tuple[int, int] | None:
    """Two same-coloured vertices sharing a component, or ``None``.

    The witness is the smallest vertex ``u`` that has a same-coloured partner
    in its component, paired with the smallest such partner.
    """
    k, labels = component_labels(g)
    if k == 0:
        return None
    key = labels.astype(np.int64) * max(g.num_colours, 1) + g.colours
    order = np.lexsort((np.arange(g.n), key))
    ks = key[order]
    dup = np.flatnonzero(ks[1:] == ks[:-1])
    if dup.size == 0:
        return None
    # first entry of each duplicated group is its smallest vertex
    firsts = dup[np.r_[True, ks[dup[1:]] != ks[dup[:-1]]]]
    best = firsts[np.argmin(order[firsts])]
    return int(order[best]), int(order[best + 1])


def is_colourful(g: ColouredGraph) -> bool:
    return colour_conflict(g) is None


def validate_cc(g: ColouredGraph, s: Iterable[Edge], p: int) -> bool:
    """True iff ``|s| <= p`` and removing ``s`` makes ``g`` colourful."""
    s = frozenset(canonical_edge(*e) for e in s)
    rest = g.remove_edges(s)
    return len(s) <= p and is_colourful(rest)


def check_partition(g: ColouredGraph, parts: Sequence[Iterable[int]]) -> list[frozenset[int]]:
    seen = np.zeros(g.n, dtype=bool)
    out = []
    for i, part in enumerate(parts):
        part = frozenset(part)
        if not part:
            raise InvalidPartition(f"part {i} is empty")
        for v in part:
            if not 0 <= v < g.n:
                raise InvalidPartition(f"vertex {v} out of range")
            if seen[v]:
                raise InvalidPartition(f"vertex {v} appears in two parts")
            seen[v] = True
        out.append(part)
    if not seen.all():
        raise InvalidPartition(f"vertex {int(np.argmin(seen))} is not covered")
    return out


def validate_cp(g: ColouredGraph, parts: Sequence[Iterable[int]], p: int) -> bool:
    """True iff at most ``p`` parts, each inducing a connected colourful subgraph."""
    parts = check_partition(g, parts)
    if len(parts) > p:
        return False
    label = np.empty(g.n, dtype=np.int64)
    for i, part in enumerate(parts):
        label[list(part)] = i
    u, v = g.edges[:, 0], g.edges[:, 1]
    inner = g.edges[label[u] == label[v]]
    sub = ColouredGraph._trusted(g.colours, inner, g.num_colours)
    k, _ = component_labels(sub)
    if k != len(parts):
        return False
    return is_colourful(sub)


def edges_to_partition(g: ColouredGraph, s: Iterable[Edge]) -> Partition:
    """The connected components of ``g - s``."""
    return connected_components(g.remove_edges(s))
