"""Brute-force and exact reference solvers.

These exist to be obviously correct rather than fast. They only read the
raw vertex colours and edge lists of a graph; none of them call into the
caterpillar, necklace or arc-cover code they are used to check.
"""

from __future__ import annotations

import heapq
import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .core import ColouredGraph, Edge, EdgeSet, Partition
from .errors import InstanceTooLarge, NodeLimitExceeded, TooManyVariables


@dataclass(frozen=True)
class SearchBudget:
    max_depth: int | None = None
    node_limit: int = 5_000_000

    def __post_init__(self):
        if self.max_depth is not None and self.max_depth < 0:
            raise ValueError("max_depth must be non-negative")
        if self.node_limit <= 0:
            raise ValueError("node_limit must be positive")


# -- colour-critical bad paths ---------------------------------------------


def _simple_paths(adj: list[list[int]], u: int, v: int) -> Iterable[list[int]]:
    stack = [(u, [u])]
    while stack:
        x, path = stack.pop()
        if x == v:
            yield path
            continue
        for y in adj[x]:
            if y not in path:
                stack.append((y, path + [y]))


def enumerate_colour_critical(g: ColouredGraph, cs):
    """All colour-critical bad paths, found by checking the definition directly.

    A bad path joins two vertices of colour ``c`` and contains no third
    vertex of that colour. It is colour-critical when no other bad path of
    colour ``c`` uses a strict subset of its backbone edges. Each one is
    reported as the ordered pair of backbone positions of its end stars,
    oriented along the backbone walk order.
    """
    from .caterpillar import ArcMultiset  # result type only

    n = g.n
    colours = g.colours.tolist()
    adj = [[] for _ in range(n)]
    for a, b in g.edge_list():
        adj[a].append(b)
        adj[b].append(a)
    backbone = [int(x) for x in cs.backbone]
    L = len(backbone)
    pos = {v: i for i, v in enumerate(backbone)}
    bb_edges = {}
    edge_count = L if cs.kind == "cycle" else L - 1
    for i in range(edge_count):
        a, b = backbone[i], backbone[(i + 1) % L]
        bb_edges[frozenset((a, b))] = i

    def star_pos(x: int) -> int:
        if x in pos:
            return pos[x]
        (c,) = [y for y in adj[x] if y in pos]  # leaves hang off one backbone vertex
        return pos[c]

    found = []  # (colour, backbone edge set, (x, y))
    for u in range(n):
        for v in range(u + 1, n):
            if colours[u] != colours[v]:
                continue
            for path in _simple_paths(adj, u, v):
                if sum(colours[w] == colours[u] for w in path) != 2:
                    continue
                walk = [pos[w] for w in path if w in pos]
                used = frozenset(
                    bb_edges[frozenset(e)] for e in zip(path, path[1:]) if frozenset(e) in bb_edges
                )
                x, y = star_pos(u), star_pos(v)
                if cs.kind == "cycle":
                    forward = len(walk) >= 2 and (walk[1] - walk[0]) % L == 1
                    pair = (walk[0], walk[-1]) if forward else (walk[-1], walk[0])
                else:
                    pair = (min(x, y), max(x, y))
                found.append((colours[u], used, pair))

    starts, ends, cols = [], [], []
    for c, used, pair in found:
        if any(c2 == c and u2 < used for c2, u2, _ in found):
            continue
        cols.append(c)
        starts.append(pair[0])
        ends.append(pair[1])
    order = sorted(range(len(starts)), key=lambda i: (cols[i], starts[i], ends[i]))
    arr = lambda xs: np.array([xs[i] for i in order], dtype=np.int64)
    return ArcMultiset(arr(starts), arr(ends), arr(cols))


# -- exact Colourful Components --------------------------------------------


class _CCSearch:
    def __init__(self, g: ColouredGraph, node_limit: int):
        self.n = g.n
        self.col = g.colours.tolist()
        self.edges = g.edge_list()
        self.inc = [[] for _ in range(self.n)]  # (neighbour, edge id), sorted by neighbour
        for i, (a, b) in enumerate(self.edges):
            self.inc[a].append((b, i))
            self.inc[b].append((a, i))
        for lst in self.inc:
            lst.sort()
        self.exact: dict[int, tuple[int, int]] = {}  # edge mask -> (opt, deleted mask)
        self.lower: dict[int, int] = {}
        self.nodes = 0
        self.node_limit = node_limit

    def components(self, verts: Iterable[int], mask: int) -> list[tuple[frozenset[int], int]]:
        left = set(verts)
        out = []
        while left:
            s = min(left)
            seen = {s}
            emask = 0
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for y, i in self.inc[x]:
                    if mask >> i & 1:
                        emask |= 1 << i
                        if y not in seen:
                            seen.add(y)
                            queue.append(y)
            left -= seen
            out.append((frozenset(seen), emask))
        return out

    def conflict(self, verts: frozenset[int]) -> tuple[int, int] | None:
        first: dict[int, int] = {}
        best = None
        for v in sorted(verts):
            c = self.col[v]
            if c in first:
                pair = (first[c], v)
                if best is None or pair < best:
                    best = pair
            else:
                first[c] = v
        return best

    def shortest_path_edges(self, u: int, v: int, mask: int) -> list[int]:
        prev = {u: None}
        queue = deque([u])
        while queue:
            x = queue.popleft()
            if x == v:
                break
            for y, i in self.inc[x]:
                if mask >> i & 1 and y not in prev:
                    prev[y] = (x, i)
                    queue.append(y)
        path = []
        x = v
        while prev[x] is not None:
            x, i = prev[x]
            path.append(i)
        return path[::-1]

    def bound(self, verts: frozenset[int], mask: int) -> int:
        counts: dict[int, int] = {}
        for v in verts:
            counts[self.col[v]] = counts.get(self.col[v], 0) + 1
        comp_bound = max(counts.values()) - 1
        return max(comp_bound, self.packing(verts, mask))

    def nearest_twin(self, u: int, mask: int):
        prev = {u: None}
        queue = deque([u])
        while queue:
            x = queue.popleft()
            if x != u and self.col[x] == self.col[u]:
                path = []
                while prev[x] is not None:
                    x, i = prev[x]
                    path.append(i)
                return path
            for y, i in self.inc[x]:
                if mask >> i & 1 and y not in prev:
                    prev[y] = (x, i)
                    queue.append(y)
        return None

    def packing(self, verts: frozenset[int], mask: int) -> int:
        # edge-disjoint paths between equal colours each need their own deletion
        heap = []
        for u in sorted(verts):
            p = self.nearest_twin(u, mask)
            if p is not None:
                heap.append((len(p), u, p))
        heapq.heapify(heap)
        used = 0
        count = 0
        while heap:
            _, u, p = heapq.heappop(heap)
            if any(used >> i & 1 for i in p):
                q = self.nearest_twin(u, mask & ~used)
                if q is not None:
                    heapq.heappush(heap, (len(q), u, q))
                continue
            for i in p:
                used |= 1 << i
            count += 1
        return count

    def solve(self, verts: frozenset[int], mask: int, limit: int) -> int | None:
        """Optimum for one component if it is at most ``limit``."""
        if mask in self.exact:
            val = self.exact[mask][0]
            return val if val <= limit else None
        pair = self.conflict(verts)
        if pair is None:
            self.exact[mask] = (0, 0)
            return 0
        if limit <= 0:
            return None
        lb = self.lower.get(mask, 0)
        if lb > limit:
            return None
        lb = max(lb, self.bound(verts, mask))
        if lb > limit:
            self.lower[mask] = lb
            return None
        self.nodes += 1
        if self.nodes > self.node_limit:
            raise NodeLimitExceeded(f"more than {self.node_limit} search nodes")
        best = None
        best_del = 0
        for i in self.shortest_path_edges(*pair, mask):
            cap = (best - 1 if best is not None else limit) - 1
            if cap < 0:
                break
            child = mask & ~(1 << i)
            parts = self.components(verts, child)
            got = self.solve_parts(parts, cap)
            if got is not None:
                best = got + 1
                best_del = 1 << i
                for _, pm in parts:
                    best_del |= self.deleted(pm)
                if best == lb:
                    break
        if best is None:
            self.lower[mask] = max(self.lower.get(mask, 0), limit + 1)
            return None
        self.exact[mask] = (best, best_del)
        return best

    def deleted(self, mask: int) -> int:
        return self.exact[mask][1] if mask else 0

    def solve_parts(self, parts, limit: int) -> int | None:
        lbs = []
        for verts, pm in parts:
            if pm in self.exact:
                lbs.append(self.exact[pm][0])
            elif self.conflict(verts) is None:
                lbs.append(0)
            else:
                lbs.append(max(1, self.lower.get(pm, 0)))
        if sum(lbs) > limit:
            return None
        total = 0
        for k, (verts, pm) in enumerate(parts):
            rest = sum(lbs[k + 1:])
            got = self.solve(verts, pm, limit - total - rest)
            if got is None:
                return None
            total += got
        return total


def bb_min_cc(g: ColouredGraph, budget: SearchBudget | None = None) -> EdgeSet | None:
    """Minimum edge set making ``g`` colourful, by depth-first branch and bound.

    Branches on the edges of a shortest path between the lexicographically
    smallest same-coloured pair sharing a component; any solution must cut
    that path. Returns ``None`` when the optimum exceeds ``budget.max_depth``.
    """
    budget = budget or SearchBudget()
    search = _CCSearch(g, budget.node_limit)
    full = (1 << g.m) - 1
    parts = search.components(range(g.n), full)
    cap = g.m if budget.max_depth is None else min(budget.max_depth, g.m)
    total = None
    for limit in range(0, cap + 1):
        total = search.solve_parts(parts, limit)
        if total is not None:
            break
    if total is None:
        return None
    deleted = 0
    for _, pm in parts:
        deleted |= search.deleted(pm)
    return frozenset(search.edges[i] for i in range(g.m) if deleted >> i & 1)


def _bfs_path(adj, u: int, v: int) -> list[int] | None:
    prev = {u: None}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        if x == v:
            path = []
            while prev[x] is not None:
                x, i = prev[x]
                path.append(i)
            return path
        for y, i in adj[x]:
            if y not in prev:
                prev[y] = (x, i)
                queue.append(y)
    return None


def ilp_min_cc(g: ColouredGraph, budget: SearchBudget | None = None) -> EdgeSet | None:
    """Minimum edge set making ``g`` colourful, as a hitting-set integer program.

    Every path between two same-coloured vertices must lose an edge. Paths
    are added lazily: solve over the paths known so far, then add a
    shortest path for every same-coloured pair still connected, until the
    solution is colourful. Each round is a relaxation of the full program,
    so the final answer is optimal. Returns ``None`` when the optimum
    exceeds ``budget.max_depth``.
    """
    from scipy.optimize import Bounds, LinearConstraint, milp

    budget = budget or SearchBudget()
    edges = g.edge_list()
    m = len(edges)
    col = g.colours.tolist()
    rows: list[list[int]] = []
    seen: set[tuple[int, ...]] = set()
    chosen: set[int] = set()
    for _ in range(budget.node_limit):
        adj = [[] for _ in range(g.n)]
        for i, (a, b) in enumerate(edges):
            if i not in chosen:
                adj[a].append((b, i))
                adj[b].append((a, i))
        fresh = 0
        for u in range(g.n):
            for v in range(u + 1, g.n):
                if col[u] == col[v]:
                    path = _bfs_path(adj, u, v)
                    if path is not None:
                        key = tuple(sorted(path))
                        if key not in seen:
                            seen.add(key)
                            rows.append(path)
                            fresh += 1
        if fresh == 0:
            if budget.max_depth is not None and len(chosen) > budget.max_depth:
                return None
            return frozenset(edges[i] for i in chosen)
        a = np.zeros((len(rows), m))
        for r, path in enumerate(rows):
            a[r, path] = 1
        res = milp(
            np.ones(m),
            constraints=LinearConstraint(a, lb=1, ub=np.inf),
            integrality=np.ones(m),
            bounds=Bounds(0, 1),
        )
        if res.x is None:
            raise RuntimeError(f"integer program failed: {res.message}")
        chosen = set(np.flatnonzero(res.x > 0.5).tolist())
        if budget.max_depth is not None and len(chosen) > budget.max_depth:
            return None
    raise NodeLimitExceeded(f"more than {budget.node_limit} cutting-plane rounds")


def _colourful_by_bfs(n: int, colours: list[int], edges: list[Edge]) -> bool:
    adj = [[] for _ in range(n)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    seen = [False] * n
    for s in range(n):
        if seen[s]:
            continue
        seen[s] = True
        queue = deque([s])
        cols = set()
        while queue:
            x = queue.popleft()
            if colours[x] in cols:
                return False
            cols.add(colours[x])
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    queue.append(y)
    return True


def exhaustive_min_cc(g: ColouredGraph, max_edges: int = 16) -> EdgeSet:
    """Minimum solution by trying every edge subset in order of size."""
    if g.m > max_edges:
        raise InstanceTooLarge(f"{g.m} edges exceeds the exhaustive limit of {max_edges}")
    edges = g.edge_list()
    colours = g.colours.tolist()
    for k in range(g.m + 1):
        for drop in itertools.combinations(range(g.m), k):
            gone = set(drop)
            kept = [e for i, e in enumerate(edges) if i not in gone]
            if _colourful_by_bfs(g.n, colours, kept):
                return frozenset(edges[i] for i in drop)
    raise AssertionError("deleting every edge is always colourful")


# -- exact Colourful Partition ---------------------------------------------


def brute_min_cp(g: ColouredGraph, max_vertices: int = 14) -> Partition:
    """Minimum partition into connected colourful parts, by exhaustive search.

    Enumerates every connected colourful vertex set, then covers the graph
    by repeatedly choosing a set for the smallest uncovered vertex.
    """
    n = g.n
    if n > max_vertices:
        raise InstanceTooLarge(f"{n} vertices exceeds the limit of {max_vertices}")
    if n == 0:
        return []
    col = g.colours.tolist()
    nb = [0] * n
    for a, b in g.edge_list():
        nb[a] |= 1 << b
        nb[b] |= 1 << a

    # connected colourful sets, indexed by their smallest vertex
    by_min: list[list[int]] = [[] for _ in range(n)]
    for s in range(n):
        seen = {1 << s}
        frontier = [1 << s]
        while frontier:
            nxt = []
            for part in frontier:
                used = {col[v] for v in range(n) if part >> v & 1}
                border = 0
                for v in range(n):
                    if part >> v & 1:
                        border |= nb[v]
                border &= ~part
                for v in range(s + 1, n):
                    if border >> v & 1 and col[v] not in used:
                        grown = part | 1 << v
                        if grown not in seen:
                            seen.add(grown)
                            nxt.append(grown)
            frontier = nxt
        by_min[s] = sorted(seen, key=lambda x: -bin(x).count("1"))

    memo: dict[int, tuple[int, int]] = {}

    def best(remaining: int) -> int:
        if remaining == 0:
            return 0
        if remaining in memo:
            return memo[remaining][0]
        low = (remaining & -remaining).bit_length() - 1
        top = None
        pick = 0
        for part in by_min[low]:
            if part & remaining == part:
                val = 1 + best(remaining & ~part)
                if top is None or val < top:
                    top, pick = val, part
        memo[remaining] = (top, pick)
        return top

    best((1 << n) - 1)
    parts = []
    remaining = (1 << n) - 1
    while remaining:
        part = memo[remaining][1]
        parts.append(frozenset(v for v in range(n) if part >> v & 1))
        remaining &= ~part
    return parts


# -- satisfiability --------------------------------------------------------


def sat_solve(formula, max_vars: int = 26) -> dict[int, bool] | None:
    """A satisfying assignment of every variable in ``formula``, or ``None``.

    Plain DPLL with unit propagation; unconstrained variables get ``False``.
    """
    variables = sorted({abs(l) for c in formula.clauses for l in c})
    if len(variables) > max_vars:
        raise TooManyVariables(f"{len(variables)} variables exceeds {max_vars}")
    clauses = [tuple(c) for c in formula.clauses]

    def dpll(clauses: list[tuple[int, ...]], assign: dict[int, bool]):
        clauses = list(clauses)
        assign = dict(assign)
        while True:
            unit = next((c[0] for c in clauses if len(c) == 1), None)
            if unit is None:
                break
            assign[abs(unit)] = unit > 0
            clauses = _condition(clauses, unit)
            if clauses is None:
                return None
        if not clauses:
            return assign
        lit = clauses[0][0]
        for choice in (lit, -lit):
            reduced = _condition(clauses, choice)
            if reduced is not None:
                got = dpll(reduced, {**assign, abs(choice): choice > 0})
                if got is not None:
                    return got
        return None

    got = dpll(clauses, {})
    if got is None:
        return None
    return {v: got.get(v, False) for v in variables}


def _condition(clauses, lit):
    out = []
    for c in clauses:
        if lit in c:
            continue
        if -lit in c:
            c = tuple(x for x in c if x != -lit)
            if not c:
                return None
        out.append(c)
    return out
