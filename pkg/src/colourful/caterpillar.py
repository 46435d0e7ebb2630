"""Exact Colourful Components / Colourful Partition on (cyclic) 1-caterpillars.

Pipeline: recognise the backbone, strip forced leaf edges so every star is
colourful, then either finish directly (nothing or one colour repeated) or
turn the consecutive same-colour star pairs into arcs over backbone edges
and pierce them with a minimum number of points.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Literal

import numpy as np
from scipy.sparse.csgraph import depth_first_order

from . import arccover
from .core import ColouredGraph, EdgeSet, Partition, canonical_edge, component_labels, edges_to_partition
from .errors import DisconnectedInput, NotACaterpillar, PreconditionViolated

Kind = Literal["path", "cycle"]


@dataclass(frozen=True, eq=False)
class CaterpillarStructure:
    """Backbone order plus the backbone neighbour of every other vertex.

    ``centre[v]`` is ``v`` for backbone vertices and the unique backbone
    neighbour otherwise; ``position[v]`` is the backbone index of
    ``centre[v]``.
    """

    kind: Kind
    backbone: np.ndarray
    centre: np.ndarray
    position: np.ndarray

    @property
    def cyclic(self) -> bool:
        return self.kind == "cycle"

    @property
    def length(self) -> int:
        return int(self.backbone.size)

    @property
    def num_backbone_edges(self) -> int:
        L = self.length
        return L if self.cyclic else max(L - 1, 0)

    def on_backbone(self) -> np.ndarray:
        return self.centre == np.arange(self.centre.size)

    @property
    def star_of(self) -> dict[int, int]:
        leaves = np.flatnonzero(~self.on_backbone())
        return dict(zip(leaves.tolist(), self.centre[leaves].tolist()))

    def backbone_edge(self, i: int) -> tuple[int, int]:
        """Backbone edge ``i`` joins positions ``i`` and ``i+1`` (mod length if cyclic)."""
        b = self.backbone
        return canonical_edge(int(b[i]), int(b[(i + 1) % b.size]))

    def backbone_edges(self) -> list[tuple[int, int]]:
        return [self.backbone_edge(i) for i in range(self.num_backbone_edges)]

    def stars(self) -> list[list[int]]:
        """Vertices of each star in backbone order, centre first."""
        out = [[int(v)] for v in self.backbone]
        for leaf, c in sorted(self.star_of.items()):
            out[int(self.position[leaf])].append(leaf)
        return out


@dataclass(frozen=True, eq=False)
class ArcMultiset:
    """Ordered pairs of backbone positions, one per colour-critical bad path."""

    starts: np.ndarray
    ends: np.ndarray
    colours: np.ndarray

    def __len__(self) -> int:
        return int(self.starts.size)

    def pairs(self) -> list[tuple[int, int]]:
        return list(zip(self.starts.tolist(), self.ends.tolist()))

    def counter(self) -> Counter:
        return Counter(self.pairs())

    def to_arc_system(self, cs: CaterpillarStructure) -> arccover.ArcSystem:
        L = cs.length
        if cs.cyclic:
            lengths = (self.ends - self.starts) % L
        else:
            lengths = self.ends - self.starts
        return arccover.ArcSystem(cs.num_backbone_edges, self.starts.copy(), lengths, cs.cyclic)


def _structure(n: int, kind: Kind, backbone: np.ndarray, edges: np.ndarray) -> CaterpillarStructure:
    position = np.full(n, -1, dtype=np.int64)
    position[backbone] = np.arange(backbone.size)
    centre = np.full(n, -1, dtype=np.int64)
    centre[backbone] = backbone
    u, v = edges[:, 0], edges[:, 1]
    on = position >= 0
    a = ~on[u] & on[v]
    centre[u[a]] = v[a]
    b = on[u] & ~on[v]
    centre[v[b]] = u[b]
    if (centre < 0).any():
        raise NotACaterpillar(f"vertex {int(np.argmax(centre < 0))} is not adjacent to the backbone")
    position = position[centre]
    for arr in (backbone, centre, position):
        arr.setflags(write=False)
    return CaterpillarStructure(kind, backbone, centre, position)


def recognize(g: ColouredGraph) -> CaterpillarStructure:
    """Find the canonical backbone of a 1-caterpillar or cyclic 1-caterpillar.

    Paths: the backbone is the path of degree->=2 vertices extended at each
    end by its smallest leaf, oriented so the smaller endpoint comes first;
    a single-centre star keeps only its centre. Cycles: start at the
    smallest cycle vertex and step towards its smaller cycle neighbour.
    """
    n, m = g.n, g.m
    if n == 0:
        raise NotACaterpillar("empty graph")
    if m not in (n - 1, n):
        k, _ = component_labels(g)
        if k != 1:
            raise DisconnectedInput(f"graph has {k} components")
        raise NotACaterpillar(f"{m} edges on {n} vertices is neither a tree nor unicyclic")
    kind: Kind = "path" if m == n - 1 else "cycle"
    edges = g.edges
    if n <= 2:
        if m != n - 1:
            raise DisconnectedInput("graph has 2 components")
        return _structure(n, "path", np.arange(n, dtype=np.int64), edges)

    deg = g.degrees
    core = deg >= 2
    both = core[edges[:, 0]] & core[edges[:, 1]]
    core_deg = np.bincount(edges[both].reshape(-1), minlength=n)
    core_ids = np.flatnonzero(core)
    ends = core_ids[core_deg[core_ids] == 1]
    if kind == "path" and ends.size:
        start = int(ends[0])
    else:
        start = int(core_ids[0]) if core_ids.size else 0
    # DFS visits neighbours in id order and leaves are dead ends, so the
    # core vertices come out in walk order; it also proves connectivity
    order = depth_first_order(g.csr, start, directed=True, return_predecessors=False)
    if order.size != n:
        k, _ = component_labels(g)
        raise DisconnectedInput(f"graph has {k} components")
    spine = order[core[order]].astype(np.int64)

    if kind == "cycle":
        if (core_deg[core_ids] != 2).any():
            raise NotACaterpillar("vertices off the cycle are not all pendant leaves")
        return _structure(n, kind, spine, edges)
    if core_ids.size == 1:
        return _structure(n, kind, core_ids.copy(), edges)
    if (core_deg[core_ids] > 2).any():
        raise NotACaterpillar("some vertex is at distance 2 or more from every central path")
    # absorb the smallest leaf hanging off each spine end
    leaf_edges = edges[~both]
    caps = []
    for end in (int(spine[0]), int(spine[-1])):
        hang = leaf_edges[(leaf_edges[:, 0] == end) | (leaf_edges[:, 1] == end)]
        caps.append(int(hang.sum(axis=1).min() - end) if hang.size else None)
    parts = [spine]
    if caps[0] is not None:
        parts.insert(0, np.array([caps[0]], dtype=np.int64))
    if caps[1] is not None:
        parts.append(np.array([caps[1]], dtype=np.int64))
    backbone = np.concatenate(parts)
    if backbone[-1] < backbone[0]:
        backbone = backbone[::-1].copy()
    return _structure(n, kind, backbone, edges)


# -- preprocessing ---------------------------------------------------------


def _forced_leaves(colours: np.ndarray, cs: CaterpillarStructure, active: np.ndarray) -> np.ndarray:
    """Leaves whose edge must go so that every star becomes colourful.

    Drops every leaf coloured like its centre and, among leaves of one star
    sharing a colour, all but the smallest id.
    """
    leaves = np.flatnonzero(active & ~cs.on_backbone())
    if leaves.size == 0:
        return leaves
    cen = cs.centre[leaves]
    col = colours[leaves]
    order = np.lexsort((leaves, col, cen))
    lv, cc, ce = leaves[order], col[order], cen[order]
    repeat = np.r_[False, (cc[1:] == cc[:-1]) & (ce[1:] == ce[:-1])]
    drop = repeat | (cc == colours[ce])
    return np.sort(lv[drop])


def _leaf_edges(cs: CaterpillarStructure, leaves: np.ndarray) -> EdgeSet:
    cen = cs.centre[leaves]
    lo, hi = np.minimum(leaves, cen), np.maximum(leaves, cen)
    return frozenset(zip(lo.tolist(), hi.tolist()))


def _active_leaves(g: ColouredGraph, cs: CaterpillarStructure) -> np.ndarray:
    # backbone vertices plus leaves still attached in g
    return cs.on_backbone() | (g.degrees > 0)


def preprocess(g: ColouredGraph, cs: CaterpillarStructure) -> tuple[EdgeSet, ColouredGraph]:
    """Remove the leaf edges that every optimum must contain (up to symmetry).

    One pass reaches the fixpoint: after it no star holds a repeated colour.
    """
    forced = _forced_leaves(g.colours, cs, _active_leaves(g, cs))
    sp = _leaf_edges(cs, forced)
    return sp, g.remove_edges(sp)


# -- scanning --------------------------------------------------------------


def _scan(colours: np.ndarray, cs: CaterpillarStructure, active: np.ndarray) -> ArcMultiset:
    verts = np.flatnonzero(active)
    L = max(cs.length, 1)
    key = np.sort(colours[verts] * L + cs.position[verts])
    if (key[1:] == key[:-1]).any():
        raise PreconditionViolated("a star contains a repeated colour")
    c, p = key // L, key % L
    same = c[1:] == c[:-1]
    if not cs.cyclic:
        return ArcMultiset(p[:-1][same], p[1:][same], c[1:][same])
    # each occurrence pairs with the next one of its colour, the last
    # wrapping round to the first
    first = np.r_[True, ~same]
    group_start = np.flatnonzero(first)
    sizes = np.diff(np.r_[group_start, c.size])
    head = np.repeat(group_start, sizes)
    nxt = np.arange(1, c.size + 1)
    last = np.r_[~same, True]
    nxt[last] = head[last]
    keep = np.repeat(sizes >= 2, sizes)
    return ArcMultiset(p[keep], p[nxt[keep]], c[keep])


def scan_arcs(g: ColouredGraph, cs: CaterpillarStructure) -> ArcMultiset:
    """Arcs between consecutive backbone positions carrying the same colour.

    For a colour seen at stars ``p1 < ... < pk`` this yields ``(p1, p2), ...,
    (p(k-1), pk)`` and, on a cycle, the closing pair ``(pk, p1)``. Leaves
    detached in ``g`` are ignored.
    """
    return _scan(g.colours, cs, _active_leaves(g, cs))


# -- one repeated colour ---------------------------------------------------


def single_colour_cut(
    kind: Kind,
    backbone_edge,
    occurrences: list[tuple[int, int, tuple[int, int] | None]],
) -> list[tuple[int, int]]:
    """Optimal deletions when a single colour repeats.

    ``occurrences`` lists ``(position, vertex, leaf_edge)`` for each vertex of
    the repeated colour, ``leaf_edge`` being ``None`` for occurrences that sit
    on (or behave as if on) the backbone. ``backbone_edge(i)`` maps an edge
    index to its vertex pair.
    """
    occ = sorted(occurrences)
    k = len(occ)
    if k < 2:
        return []
    if kind == "path":
        return [backbone_edge(p) for p, _, _ in occ[:-1]]
    on_bb = [o for o in occ if o[2] is None]
    if len(on_bb) >= 2:
        return [backbone_edge(p) for p, _, _ in occ]
    if on_bb:
        keep = on_bb[0]
    else:
        keep = min(occ, key=lambda o: o[1])
    return [o[2] for o in occ if o is not keep]


def _occurrences(g: ColouredGraph, cs: CaterpillarStructure, active: np.ndarray, gamma: int):
    occ = []
    for v in np.flatnonzero(active & (g.colours == gamma)).tolist():
        c = int(cs.centre[v])
        occ.append((int(cs.position[v]), v, None if c == v else canonical_edge(c, v)))
    return occ


def solve_single_colour(g: ColouredGraph, cs: CaterpillarStructure) -> EdgeSet:
    """Optimal edge set when exactly one colour repeats in the backbone component."""
    active = _active_leaves(g, cs)
    counts = np.bincount(g.colours[active], minlength=g.num_colours)
    repeated = np.flatnonzero(counts >= 2)
    if repeated.size != 1:
        raise PreconditionViolated(f"expected one repeated colour, found {repeated.size}")
    occ = _occurrences(g, cs, active, int(repeated[0]))
    return frozenset(single_colour_cut(cs.kind, cs.backbone_edge, occ))


# -- full solver -----------------------------------------------------------


def _solve_backbone(g: ColouredGraph, cs: CaterpillarStructure, active: np.ndarray) -> list[tuple[int, int]]:
    counts = np.bincount(g.colours[active], minlength=g.num_colours)
    repeated = int((counts >= 2).sum())
    if repeated == 0:
        return []
    if repeated == 1:
        occ = _occurrences(g, cs, active, int(np.argmax(counts >= 2)))
        return single_colour_cut(cs.kind, cs.backbone_edge, occ)
    arcs = _scan(g.colours, cs, active)
    points = arccover.pierce(arcs.to_arc_system(cs)).points
    b = cs.backbone
    pts = np.fromiter(sorted(points), dtype=np.int64, count=len(points))
    a, c = b[pts], b[(pts + 1) % b.size]
    return list(zip(np.minimum(a, c).tolist(), np.maximum(a, c).tolist()))


def solve_with_structure(g: ColouredGraph, cs: CaterpillarStructure) -> EdgeSet:
    """Minimum edge set for ``g`` given its caterpillar structure."""
    if cs.length <= 1:
        # a single star: only the forced leaf edges matter
        return _leaf_edges(cs, _forced_leaves(g.colours, cs, np.ones(g.n, dtype=bool)))
    active = np.ones(g.n, dtype=bool)
    forced = _forced_leaves(g.colours, cs, active)
    active[forced] = False
    sp = _leaf_edges(cs, forced)
    return sp | frozenset(_solve_backbone(g, cs, active))


def solve_cc(g: ColouredGraph) -> EdgeSet:
    """Minimum set of edges whose removal makes a coloured caterpillar colourful."""
    return solve_with_structure(g, recognize(g))


def solve_cp(g: ColouredGraph) -> Partition:
    """Minimum partition into connected colourful parts of a coloured caterpillar."""
    return edges_to_partition(g, solve_cc(g))
