"""Colourful Components on necklace graphs with colourful beads.

A necklace strings connected beads along a path or cycle backbone, each
bead meeting the backbone in exactly one vertex. With two or more repeated
colours an optimum deletes backbone edges only, so every bead can be
flattened into a star around its backbone vertex and handed to the
caterpillar solver. With a single repeated colour, each occurrence either
behaves like a backbone vertex (two edge-disjoint routes to its bead's
backbone vertex) or like a leaf hanging off a bridge.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from . import caterpillar
from .caterpillar import CaterpillarStructure
from .core import ColouredGraph, EdgeSet, Partition, canonical_edge, component_labels, edges_to_partition
from .errors import (
    AmbiguousBackbone,
    DisconnectedInput,
    NonColourfulBead,
    NotACaterpillar,
    NotANecklace,
    PreconditionViolated,
)

Kind = Literal["path", "cycle"]
BackboneHint = tuple[Kind, Sequence[int]]


@dataclass(frozen=True, eq=False)
class NecklaceStructure:
    """Backbone order plus, for every vertex, the backbone position of its bead."""

    kind: Kind
    backbone: np.ndarray
    bead_of: np.ndarray

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

    def backbone_edge(self, i: int) -> tuple[int, int]:
        b = self.backbone
        return canonical_edge(int(b[i]), int(b[(i + 1) % b.size]))

    def backbone_edges(self) -> list[tuple[int, int]]:
        return [self.backbone_edge(i) for i in range(self.num_backbone_edges)]

    @property
    def beads(self) -> list[frozenset[int]]:
        order = np.argsort(self.bead_of, kind="stable")
        cuts = np.flatnonzero(np.diff(self.bead_of[order])) + 1
        return [frozenset(x.tolist()) for x in np.split(order, cuts)]


def _backbone_mask(g: ColouredGraph, backbone_edges: list[tuple[int, int]]) -> np.ndarray:
    if not backbone_edges:
        return np.zeros(g.m, dtype=bool)
    keys = g.edge_keys()
    bk = np.array([u * g.n + v for u, v in backbone_edges], dtype=np.int64)
    return np.isin(keys, bk)


def _verify(g: ColouredGraph, kind: Kind, backbone: Sequence[int]) -> NecklaceStructure:
    b = np.array(list(backbone), dtype=np.int64)
    if b.size == 0:
        raise NotANecklace("empty backbone")
    if b.min() < 0 or b.max() >= g.n or np.unique(b).size != b.size:
        raise NotANecklace("backbone vertices must be distinct vertex ids")
    if kind == "cycle" and b.size < 3:
        raise NotANecklace("a cycle backbone needs at least 3 vertices")
    k, _ = component_labels(g)
    if k != 1:
        raise DisconnectedInput(f"graph has {k} components")
    steps = b.size if kind == "cycle" else b.size - 1
    bb_edges = [canonical_edge(int(b[i]), int(b[(i + 1) % b.size])) for i in range(steps)]
    for e in bb_edges:
        if not g.has_edge(*e):
            raise NotANecklace(f"backbone edge {e} is missing")
    mask = _backbone_mask(g, bb_edges)
    rest = ColouredGraph._trusted(g.colours, g.edges[~mask], g.num_colours)
    _, labels = component_labels(rest)
    per_label = np.bincount(labels[b], minlength=int(labels.max()) + 1)
    if (per_label != 1).any():
        raise NotANecklace("every bead must contain exactly one backbone vertex")
    pos_of_label = np.empty(per_label.size, dtype=np.int64)
    pos_of_label[labels[b]] = np.arange(b.size)
    bead_of = pos_of_label[labels]
    b.setflags(write=False)
    bead_of.setflags(write=False)
    return NecklaceStructure(kind, b, bead_of)


def find_bridges(g: ColouredGraph) -> np.ndarray:
    """Boolean mask over ``g.edges`` marking the bridges (iterative low-link DFS)."""
    n, m = g.n, g.m
    indptr = [0] * (n + 1)
    for u, v in g.edges.tolist():
        indptr[u + 1] += 1
        indptr[v + 1] += 1
    for i in range(n):
        indptr[i + 1] += indptr[i]
    fill = indptr[:-1].copy()
    nbr = [0] * (2 * m)
    eid = [0] * (2 * m)
    for i, (u, v) in enumerate(g.edges.tolist()):
        nbr[fill[u]], eid[fill[u]] = v, i
        fill[u] += 1
        nbr[fill[v]], eid[fill[v]] = u, i
        fill[v] += 1

    disc = [-1] * n
    low = [0] * n
    bridge = np.zeros(m, dtype=bool)
    clock = 0
    for root in range(n):
        if disc[root] >= 0:
            continue
        disc[root] = low[root] = clock
        clock += 1
        stack = [(root, -1, indptr[root])]
        while stack:
            v, via, it = stack[-1]
            if it < indptr[v + 1]:
                stack[-1] = (v, via, it + 1)
                w, e = nbr[it], eid[it]
                if e == via:
                    continue
                if disc[w] < 0:
                    disc[w] = low[w] = clock
                    clock += 1
                    stack.append((w, e, indptr[w]))
                elif disc[w] < low[v]:
                    low[v] = disc[w]
            else:
                stack.pop()
                if stack:
                    parent = stack[-1][0]
                    if low[v] < low[parent]:
                        low[parent] = low[v]
                    if low[v] > disc[parent]:
                        bridge[via] = True
    return bridge


def _two_edge_labels(g: ColouredGraph, bridges: np.ndarray) -> np.ndarray:
    inner = ColouredGraph._trusted(g.colours, g.edges[~bridges], g.num_colours)
    return component_labels(inner)[1]


def _discover(g: ColouredGraph) -> NecklaceStructure:
    # A caterpillar is its own necklace; otherwise take every bridge as a
    # backbone edge, which only works when the bridges form one path whose
    # inner components are entered and left through the same vertex.
    try:
        cs = caterpillar.recognize(g)
        return NecklaceStructure(cs.kind, cs.backbone, cs.position)
    except NotACaterpillar:
        pass
    bridges = find_bridges(g)
    if not bridges.any():
        raise AmbiguousBackbone("graph is 2-edge-connected; a backbone hint is required")
    labels = _two_edge_labels(g, bridges)
    k = int(labels.max()) + 1
    ends: list[list[int]] = [[] for _ in range(k)]
    for u, v in g.edges[bridges].tolist():
        ends[labels[u]].append(u)
        ends[labels[v]].append(v)
    if any(len(x) > 2 for x in ends) or any(len(x) == 2 and x[0] != x[1] for x in ends):
        raise AmbiguousBackbone("bridges do not form a single backbone path; a hint is required")
    attach = [x[0] for x in ends]
    tips = [a for a, x in zip(attach, ends) if len(x) == 1]
    nxt: dict[int, list[int]] = {}
    for u, v in g.edges[bridges].tolist():
        nxt.setdefault(u, []).append(v)
        nxt.setdefault(v, []).append(u)
    start = min(tips)
    order = [start]
    prev = -1
    while True:
        step = [w for w in nxt[order[-1]] if w != prev]
        if not step:
            break
        prev = order[-1]
        order.append(step[0])
    return _verify(g, "path", order)


def recognize_necklace(g: ColouredGraph, hint: BackboneHint | None = None) -> NecklaceStructure:
    """Verify a backbone hint, or discover the backbone when that is unambiguous."""
    if g.n == 0:
        raise NotANecklace("empty graph")
    if hint is not None:
        kind, verts = hint
        if kind not in ("path", "cycle"):
            raise ValueError(f"unknown backbone kind {kind!r}")
        return _verify(g, kind, verts)
    k, _ = component_labels(g)
    if k != 1:
        raise DisconnectedInput(f"graph has {k} components")
    return _discover(g)


def check_colourful_beads(ns: NecklaceStructure, g: ColouredGraph) -> bool:
    key = ns.bead_of * max(g.num_colours, 1) + g.colours
    return np.unique(key).size == g.n


def _repeated_colours(g: ColouredGraph) -> np.ndarray:
    return np.flatnonzero(np.bincount(g.colours, minlength=g.num_colours) >= 2)


def _star_beads(g: ColouredGraph, ns: NecklaceStructure) -> bool:
    centre_of = ns.backbone[ns.bead_of]
    mask = _backbone_mask(g, ns.backbone_edges())
    e = g.edges[~mask]
    return e.shape[0] == g.n - ns.length and bool(
        ((centre_of[e[:, 0]] == e[:, 1]) | (centre_of[e[:, 1]] == e[:, 0])).all()
    )


def reduce_to_caterpillar(
    g: ColouredGraph, ns: NecklaceStructure
) -> tuple[ColouredGraph, CaterpillarStructure, dict[tuple[int, int], tuple[int, int]]]:
    """Flatten every bead into a star around its backbone vertex.

    Returns the caterpillar, its structure and the map from caterpillar
    backbone edges to (identical) edges of ``g``. A 1-caterpillar is
    returned unchanged even when its stars repeat colours.
    """
    b = ns.backbone
    bb = ns.backbone_edges()
    already = _star_beads(g, ns)
    if not already:
        if _repeated_colours(g).size < 2:
            raise PreconditionViolated("the reduction needs at least two repeated colours")
        if not check_colourful_beads(ns, g):
            raise NonColourfulBead("some bead is not colourful")
    if already:
        h = g
    else:
        centre_of = b[ns.bead_of]
        leaves = np.flatnonzero(centre_of != np.arange(g.n))
        hub = centre_of[leaves]
        flat = np.stack([np.minimum(leaves, hub), np.maximum(leaves, hub)], axis=1)
        edges = np.vstack([np.array(bb, dtype=np.int64).reshape(-1, 2), flat])
        h = ColouredGraph._trusted(g.colours, edges, g.num_colours)
    cs = caterpillar._structure(g.n, ns.kind, b.copy(), h.edges)
    return h, cs, {e: e for e in bb}


def _single_colour(g: ColouredGraph, ns: NecklaceStructure, gamma: int) -> EdgeSet:
    mask = _backbone_mask(g, ns.backbone_edges())
    beads = ColouredGraph._trusted(g.colours, g.edges[~mask], g.num_colours)
    bridges = find_bridges(beads)
    labels = _two_edge_labels(beads, bridges)
    bridge_set = set(map(tuple, beads.edges[bridges].tolist()))
    adj = beads.adjacency
    occ = []
    for w in np.flatnonzero(g.colours == gamma).tolist():
        pos = int(ns.bead_of[w])
        v = int(ns.backbone[pos])
        if labels[w] == labels[v]:
            occ.append((pos, w, None))
            continue
        # walk from w towards v along a BFS tree; every w-v path crosses the
        # same bridges, so the first one met is the one nearest w
        parent = {v: v}
        frontier = [v]
        while w not in parent:
            nxt = []
            for x in frontier:
                for y in adj[x]:
                    if y not in parent:
                        parent[y] = x
                        nxt.append(y)
            frontier = nxt
        x = w
        while canonical_edge(x, parent[x]) not in bridge_set:
            x = parent[x]
        occ.append((pos, w, canonical_edge(x, parent[x])))
    return frozenset(caterpillar.single_colour_cut(ns.kind, ns.backbone_edge, occ))


def solve_cc_necklace(g: ColouredGraph, hint: BackboneHint | None = None) -> EdgeSet:
    """Minimum deletion set for a necklace graph with colourful beads."""
    ns = recognize_necklace(g, hint)
    if _star_beads(g, ns):
        cs = caterpillar._structure(g.n, ns.kind, ns.backbone.copy(), g.edges)
        return caterpillar.solve_with_structure(g, cs)
    if not check_colourful_beads(ns, g):
        raise NonColourfulBead("some bead is not colourful")
    repeated = _repeated_colours(g)
    if repeated.size == 0:
        return frozenset()
    if repeated.size == 1:
        return _single_colour(g, ns, int(repeated[0]))
    h, cs, edge_map = reduce_to_caterpillar(g, ns)
    return frozenset(edge_map[e] for e in caterpillar.solve_with_structure(h, cs))


def solve_cp_necklace(g: ColouredGraph, hint: BackboneHint | None = None) -> Partition:
    return edges_to_partition(g, solve_cc_necklace(g, hint))
