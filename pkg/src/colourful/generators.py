"""Seeded random instance generators.

All generators take an explicit seed and are vectorised, so the same call
always yields the same graph and million-vertex benchmark instances build
in well under a second.
"""

from __future__ import annotations

import numpy as np

from .core import ColouredGraph


def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def _relabel(rng, n: int, colours: np.ndarray, edges: np.ndarray, shuffle: bool):
    if not shuffle:
        return colours, edges, np.arange(n)
    perm = rng.permutation(n)
    new_colours = np.empty_like(colours)
    new_colours[perm] = colours
    return new_colours, perm[edges], perm


def random_caterpillar(
    n: int,
    colours: int,
    seed=None,
    *,
    cyclic: bool = False,
    backbone: int | None = None,
    shuffle: bool = True,
) -> ColouredGraph:
    """Random 1-caterpillar (or cyclic 1-caterpillar) on ``n`` vertices.

    The backbone length is drawn uniformly unless given; every other vertex
    hangs off a uniformly chosen backbone vertex, and colours are uniform
    over ``0..colours-1``.
    """
    rng = _rng(seed)
    low = 3 if cyclic else 1
    if n < low:
        raise ValueError(f"need at least {low} vertices")
    L = int(rng.integers(low, n + 1)) if backbone is None else backbone
    if not low <= L <= n:
        raise ValueError(f"backbone length {L} out of range")
    spine = np.arange(L, dtype=np.int64)
    bb_edges = np.stack([spine[:-1], spine[1:]], axis=1)
    if cyclic:
        bb_edges = np.vstack([bb_edges, [[0, L - 1]]])
    leaves = np.arange(L, n, dtype=np.int64)
    hubs = rng.integers(0, L, size=leaves.size)
    edges = np.vstack([bb_edges, np.stack([hubs, leaves], axis=1)])
    col = rng.integers(0, colours, size=n).astype(np.int64)
    col, edges, _ = _relabel(rng, n, col, edges, shuffle)
    return ColouredGraph(col, edges, colours)


def random_necklace(
    n: int,
    colours: int,
    seed=None,
    *,
    cyclic: bool | None = None,
    max_bead: int = 4,
    extra_edge_prob: float = 0.5,
) -> tuple[ColouredGraph, tuple[str, tuple[int, ...]]]:
    """Random necklace with colourful beads, plus its backbone hint.

    Beads have 1..``max_bead`` vertices with distinct colours; each is a
    random tree plus random extra edges, and its backbone vertex is a random
    bead member.
    """
    rng = _rng(seed)
    if colours < max_bead:
        raise ValueError("need at least max_bead colours to keep beads colourful")
    if cyclic is None:
        cyclic = bool(rng.integers(0, 2))
    sizes = []
    left = n
    while left > 0:
        s = int(rng.integers(1, min(max_bead, left) + 1))
        sizes.append(s)
        left -= s
    if cyclic and len(sizes) < 3:
        raise ValueError("too few vertices for a cycle of beads")
    col = np.empty(n, dtype=np.int64)
    edges = []
    backbone = []
    base = 0
    for s in sizes:
        members = list(range(base, base + s))
        col[base:base + s] = rng.choice(colours, size=s, replace=False)
        for i in range(1, s):
            edges.append((members[int(rng.integers(0, i))], members[i]))
        present = set(edges)
        for i in range(s):
            for j in range(i + 1, s):
                a, b = members[i], members[j]
                if (a, b) not in present and (b, a) not in present and rng.random() < extra_edge_prob:
                    edges.append((a, b))
        backbone.append(members[int(rng.integers(0, s))])
        base += s
    for a, b in zip(backbone, backbone[1:]):
        edges.append((a, b))
    if cyclic:
        edges.append((backbone[-1], backbone[0]))
    col, e, perm = _relabel(rng, n, col, np.array(edges, dtype=np.int64).reshape(-1, 2), True)
    hint = ("cycle" if cyclic else "path", tuple(int(perm[v]) for v in backbone))
    return ColouredGraph(col, e, colours), hint
