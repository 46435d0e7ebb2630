"""Hardness instance generators from CNF formulas.

Two families of builders:

* tree families (``binary4``, ``ternary3``, ``quaternary2``): coloured
  k-caterpillars where the formula is satisfiable iff exactly
  ``n + 2*m3 + m2`` edge deletions make the tree colourful;
* planar-style families (``planar-a4``, ``planar-a3``): graphs with 5 or 12
  colours and maximum degree 4 or 3 where the budget is ``10*m``.

Every builder records a role table mapping gadget vertices to ids, which
the witness maps use to translate assignments into edge sets and back.

Vertex ids are laid out as: variable gadgets (in variable order), then
clause gadgets (in clause order), then path fillers.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Literal, Mapping

import numpy as np

from .core import ColouredGraph, EdgeSet, canonical_edge, validate_cc
from .errors import (
    AssignmentNotSatisfying,
    ClauseSizeError,
    FormulaNotSimplified,
    InvalidWitness,
)

Family = Literal["binary4", "ternary3", "quaternary2", "planar-a4", "planar-a3"]
TREE_FAMILIES = ("binary4", "ternary3", "quaternary2")
PLANAR_FAMILIES = ("planar-a4", "planar-a3")
Assignment = Mapping[int, bool]


@dataclass(frozen=True)
class CnfFormula:
    """A CNF formula with at most three literals per clause."""

    n_vars: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        clauses = tuple(tuple(int(l) for l in c) for c in self.clauses)
        object.__setattr__(self, "clauses", clauses)
        for j, c in enumerate(clauses, 1):
            if not c:
                raise ValueError(f"clause {j} is empty")
            if len(c) > 3:
                raise ClauseSizeError(f"clause {j} has {len(c)} literals")
            if len(set(c)) != len(c):
                raise ValueError(f"clause {j} repeats a literal")
            for l in c:
                if l == 0 or abs(l) > self.n_vars:
                    raise ValueError(f"literal {l} out of range for {self.n_vars} variables")

    @property
    def variables(self) -> list[int]:
        return sorted({abs(l) for c in self.clauses for l in c})

    @property
    def literal_counts(self) -> Counter:
        return Counter(l for c in self.clauses for l in c)

    @property
    def occurrence_counts(self) -> Counter:
        return Counter(abs(l) for c in self.clauses for l in c)

    def satisfied_by(self, assignment: Assignment) -> bool:
        return all(any(assignment.get(abs(l), False) == (l > 0) for l in c) for c in self.clauses)


def is_simplified(f: CnfFormula) -> bool:
    """Clauses of size 2 or 3 and every literal of every variable used once or twice."""
    if any(len(c) < 2 for c in f.clauses):
        return False
    counts = f.literal_counts
    return all(1 <= counts[v] <= 2 and 1 <= counts[-v] <= 2 for v in f.variables)


def _tree_ready(f: CnfFormula) -> bool:
    # the gadgets tolerate a literal with no occurrence; they need clauses of
    # size 2 or 3 and at most two uses of each literal
    if any(len(c) < 2 for c in f.clauses):
        return False
    counts = f.literal_counts
    return all(counts[v] <= 2 and counts[-v] <= 2 for v in f.variables)


def simplify_with_assignment(f: CnfFormula) -> tuple[CnfFormula, dict[int, bool]] | None:
    """Unit propagation plus pure-literal elimination to a fixpoint.

    Returns the reduced formula and the values fixed along the way, or
    ``None`` when a contradiction shows the formula is unsatisfiable.
    """
    clauses = [tuple(c) for c in f.clauses]
    fixed: dict[int, bool] = {}

    def assign(lit: int) -> bool:
        nonlocal clauses
        fixed[abs(lit)] = lit > 0
        out = []
        for c in clauses:
            if lit in c:
                continue
            if -lit in c:
                c = tuple(x for x in c if x != -lit)
                if not c:
                    return False
            out.append(c)
        clauses = out
        return True

    changed = True
    while changed:
        changed = False
        unit = next((c[0] for c in clauses if len(c) == 1), None)
        if unit is not None:
            if not assign(unit):
                return None
            changed = True
            continue
        counts = Counter(l for c in clauses for l in c)
        for v in sorted({abs(l) for l in counts}):
            pos, neg = counts[v], counts[-v]
            # a literal used 0 or 3 times leaves the variable single-polarity
            if pos == 0 or neg == 0:
                assign(v if neg == 0 else -v)
                changed = True
                break
    out = CnfFormula(f.n_vars, tuple(clauses))
    counts = out.literal_counts
    for v in out.variables:
        if counts[v] > 2 or counts[-v] > 2:
            raise FormulaNotSimplified(
                f"variable {v} occurs {counts[v] + counts[-v]} times; not a 3,3-SAT formula"
            )
    return out, fixed


def simplify_cnf(f: CnfFormula) -> CnfFormula | None:
    """The simplified formula, or ``None`` if it is unsatisfiable."""
    got = simplify_with_assignment(f)
    return None if got is None else got[0]


@dataclass(frozen=True, eq=False)
class GadgetInstance:
    graph: ColouredGraph
    budget: int
    family: Family
    formula: CnfFormula
    roles: dict[str, int] = field(default_factory=dict)
    backbone: tuple[int, ...] = ()

    def vertex(self, role: str) -> int:
        return self.roles[role]

    def edge(self, a: str, b: str) -> tuple[int, int]:
        return canonical_edge(self.roles[a], self.roles[b])


class _Builder:
    def __init__(self):
        self.colours: list[int] = []
        self.edges: list[tuple[int, int]] = []
        self.roles: dict[str, int] = {}
        self.total_colours = 0

    def new_colour(self) -> int:
        self.total_colours += 1
        return self.total_colours - 1

    def add(self, role: str, colour: int = -1) -> int:
        self.roles[role] = len(self.colours)
        self.colours.append(colour)
        return self.roles[role]

    def link(self, a: str, b: str):
        self.edges.append((self.roles[a], self.roles[b]))

    def paint(self, role: str, colour: int):
        self.colours[self.roles[role]] = colour

    def graph(self) -> ColouredGraph:
        assert all(c >= 0 for c in self.colours)
        return ColouredGraph(self.colours, self.edges, self.total_colours)


def tree_budget(f: CnfFormula) -> int:
    m3 = sum(len(c) == 3 for c in f.clauses)
    m2 = sum(len(c) == 2 for c in f.clauses)
    return len(f.variables) + 2 * m3 + m2


def _occurrences(f: CnfFormula, v: int, positive: bool) -> list[int]:
    lit = v if positive else -v
    return [j for j, c in enumerate(f.clauses, 1) if lit in c]


def _lit_role(lit: int, j: int) -> str:
    return f"var{abs(lit)}.{'pos' if lit > 0 else 'neg'}.c{j}"


def build_tree_instance(f: CnfFormula, family: Family) -> GadgetInstance:
    """Coloured k-caterpillar whose optimum equals the budget iff ``f`` is satisfiable."""
    if family not in TREE_FAMILIES:
        raise ValueError(f"unknown tree family {family!r}")
    if not _tree_ready(f):
        raise FormulaNotSimplified("simplify the formula before building a tree instance")
    b = _Builder()
    variables = f.variables
    big_gadget = "C" if family == "quaternary2" else "B"

    for v in variables:
        b.add(f"var{v}.root")
        b.add(f"var{v}.pos")
        b.add(f"var{v}.neg")
        b.link(f"var{v}.root", f"var{v}.pos")
        b.link(f"var{v}.root", f"var{v}.neg")
        for positive, side in ((True, "pos"), (False, "neg")):
            for j in _occurrences(f, v, positive):
                b.add(f"var{v}.{side}.c{j}")
                b.link(f"var{v}.{side}", f"var{v}.{side}.c{j}")

    for j, clause in enumerate(f.clauses, 1):
        r = f"clause{j}"
        b.add(f"{r}.root")
        if len(clause) == 2:
            for name in ("z", "z1", "lit1", "lit2"):
                b.add(f"{r}.{name}")
            for a, c in (("root", "z"), ("root", "z1"), ("z", "lit1"), ("z1", "lit2")):
                b.link(f"{r}.{a}", f"{r}.{c}")
        elif big_gadget == "B":
            for name in ("z", "z1", "y", "y1", "lit1", "lit2", "lit3"):
                b.add(f"{r}.{name}")
            for a, c in (("lit1", "y"), ("lit2", "y1"), ("lit3", "z1"), ("y", "z"),
                         ("y1", "z"), ("z", "root"), ("z1", "root")):
                b.link(f"{r}.{a}", f"{r}.{c}")
        else:
            for name in ("z", "z1", "z2", "lit1", "lit2", "lit3"):
                b.add(f"{r}.{name}")
            for a, c in (("root", "z"), ("root", "z1"), ("root", "z2"),
                         ("z", "lit1"), ("z1", "lit2"), ("z2", "lit3")):
                b.link(f"{r}.{a}", f"{r}.{c}")

    roots = [f"var{v}.root" for v in variables] + [f"clause{j}.root" for j in range(1, len(f.clauses) + 1)]
    if family == "binary4":
        for t in range(len(roots)):
            b.add(f"path{t}")
        for t, root in enumerate(roots):
            b.link(f"path{t}", root)
            if t:
                b.link(f"path{t - 1}", f"path{t}")
        backbone = tuple(b.roles[f"path{t}"] for t in range(len(roots)))
    else:
        for a, c in zip(roots, roots[1:]):
            b.link(a, c)
        backbone = tuple(b.roles[r] for r in roots)

    # colours: variable pairs, occurrences, clause gadget pairs/triples, roots, fillers
    for v in variables:
        c = b.new_colour()
        b.paint(f"var{v}.pos", c)
        b.paint(f"var{v}.neg", c)
    for v in variables:
        occ = sorted([(j, "pos") for j in _occurrences(f, v, True)] + [(j, "neg") for j in _occurrences(f, v, False)])
        for j, side in occ:
            b.paint(f"var{v}.{side}.c{j}", b.new_colour())
    for j, clause in enumerate(f.clauses, 1):
        r = f"clause{j}"
        for k, lit in enumerate(clause, 1):
            b.paint(f"{r}.lit{k}", b.colours[b.roles[_lit_role(lit, j)]])
        zc = b.new_colour()
        zs = ("z", "z1", "z2") if len(clause) == 3 and big_gadget == "C" else ("z", "z1")
        for name in zs:
            b.paint(f"{r}.{name}", zc)
        if len(clause) == 3 and big_gadget == "B":
            yc = b.new_colour()
            b.paint(f"{r}.y", yc)
            b.paint(f"{r}.y1", yc)
    for root in roots:
        b.paint(root, b.new_colour())
    for t in range(len(roots) if family == "binary4" else 0):
        b.paint(f"path{t}", b.new_colour())

    return GadgetInstance(b.graph(), tree_budget(f), family, f, b.roles, backbone)


def _first_true_literal(clause, assignment: Assignment) -> int:
    for k, lit in enumerate(clause, 1):
        if assignment.get(abs(lit), False) == (lit > 0):
            return k
    raise AssignmentNotSatisfying(f"clause {clause} is not satisfied")


def tree_witness_forward(inst: GadgetInstance, assignment: Assignment) -> EdgeSet:
    """Edge set of size exactly the budget built from a satisfying assignment."""
    f = inst.formula
    if not f.satisfied_by(assignment):
        raise AssignmentNotSatisfying("assignment does not satisfy the formula")
    e = inst.edge
    s = set()
    for v in f.variables:
        side = "pos" if assignment.get(v, False) else "neg"
        s.add(e(f"var{v}.root", f"var{v}.{side}"))
    for j, clause in enumerate(f.clauses, 1):
        r = f"clause{j}"
        k = _first_true_literal(clause, assignment)
        if len(clause) == 2:
            s.add(e(f"{r}.root", f"{r}.z1" if k == 1 else f"{r}.z"))
        elif inst.family == "quaternary2":
            for other in {1: ("z1", "z2"), 2: ("z", "z2"), 3: ("z", "z1")}[k]:
                s.add(e(f"{r}.root", f"{r}.{other}"))
        else:
            # lit1 under y under z, lit2 under y1 under z, lit3 under z1
            cut = {1: (("y1", "z"), ("z1", "root")),
                   2: (("y", "z"), ("z1", "root")),
                   3: (("y", "z"), ("z", "root"))}[k]
            for a, c in cut:
                s.add(e(f"{r}.{a}", f"{r}.{c}"))
    return frozenset(s)


def tree_witness_backward(inst: GadgetInstance, s: EdgeSet) -> dict[int, bool]:
    """Read the assignment off which side of each variable gadget was cut."""
    s = frozenset(canonical_edge(*x) for x in s)
    if len(s) != inst.budget:
        raise InvalidWitness(f"solution has {len(s)} edges, budget is {inst.budget}")
    try:
        ok = validate_cc(inst.graph, s, inst.budget)
    except ValueError as exc:
        raise InvalidWitness(str(exc)) from exc
    if not ok:
        raise InvalidWitness("edge set does not make the graph colourful")
    assignment = {}
    for v in inst.formula.variables:
        pos = inst.edge(f"var{v}.root", f"var{v}.pos") in s
        neg = inst.edge(f"var{v}.root", f"var{v}.neg") in s
        if pos == neg:
            raise InvalidWitness(f"variable gadget {v} is not cut exactly once at its root")
        assignment[v] = pos
    if not inst.formula.satisfied_by(assignment):
        raise InvalidWitness("recovered assignment does not satisfy the formula")
    return assignment


# -- planar-style family ---------------------------------------------------


def _clause_order(f: CnfFormula, v: int) -> list[int]:
    return [j for j, c in enumerate(f.clauses, 1) if v in c or -v in c]


def build_planar_instance(f: CnfFormula, family: Family) -> GadgetInstance:
    """Bounded-degree instance with budget ``10*m`` for a formula of 3-literal clauses.

    Each variable becomes a cycle of four vertices per occurrence, coloured
    alternately with two shared colours; each clause becomes a triangle
    (``planar-a4``) or a 9-cycle with a hub (``planar-a3``).
    """
    if family not in PLANAR_FAMILIES:
        raise ValueError(f"unknown planar family {family!r}")
    for j, c in enumerate(f.clauses, 1):
        if len(c) != 3:
            raise ClauseSizeError(f"clause {j} has {len(c)} literals, need exactly 3")
        if len({abs(l) for l in c}) != 3:
            raise ClauseSizeError(f"clause {j} must use three distinct variables")
    b = _Builder()
    c_odd, c_even = b.new_colour(), b.new_colour()
    for v in f.variables:
        order = _clause_order(f, v)
        for j in order:
            for t in (1, 2, 3, 4):
                b.add(f"cyc{v}.c{j}.{t}", c_odd if t % 2 else c_even)
        ring = [f"cyc{v}.c{j}.{t}" for j in order for t in (1, 2, 3, 4)]
        for a, c in zip(ring, ring[1:] + ring[:1]):
            b.link(a, c)

    size = 3 if family == "planar-a4" else 10
    gadget_colours = [b.new_colour() for _ in range(size)]
    # attachment points (a-index for the first and second link) per literal slot
    slots = [(1, 2), (2, 3), (3, 1)] if family == "planar-a4" else [(1, 3), (4, 6), (7, 9)]
    for j, clause in enumerate(f.clauses, 1):
        g = f"clause{j}"
        for i in range(1, size + 1):
            b.add(f"{g}.a{i}", gadget_colours[i - 1])
        if family == "planar-a4":
            ring = [1, 2, 3]
            hub = []
        else:
            ring = list(range(1, 10))
            hub = [2, 5, 8]
        for a, c in zip(ring, ring[1:] + ring[:1]):
            b.link(f"{g}.a{a}", f"{g}.a{c}")
        for h in hub:
            b.link(f"{g}.a10", f"{g}.a{h}")
        for lit, (s1, s2) in zip(clause, slots):
            v = abs(lit)
            t1, t2 = (1, 2) if lit > 0 else (2, 3)
            b.link(f"cyc{v}.c{j}.{t1}", f"{g}.a{s1}")
            b.link(f"cyc{v}.c{j}.{t2}", f"{g}.a{s2}")

    return GadgetInstance(b.graph(), 10 * len(f.clauses), family, f, b.roles)


def planar_witness_forward(inst: GadgetInstance, assignment: Assignment) -> EdgeSet:
    f = inst.formula
    if not f.satisfied_by(assignment):
        raise AssignmentNotSatisfying("assignment does not satisfy the formula")
    e = inst.edge
    s = set()
    for v in f.variables:
        order = _clause_order(f, v)
        for prev, j in zip(order[-1:] + order[:-1], order):
            if assignment.get(v, False):
                s.add(e(f"cyc{v}.c{prev}.4", f"cyc{v}.c{j}.1"))
                s.add(e(f"cyc{v}.c{j}.2", f"cyc{v}.c{j}.3"))
            else:
                s.add(e(f"cyc{v}.c{j}.1", f"cyc{v}.c{j}.2"))
                s.add(e(f"cyc{v}.c{j}.3", f"cyc{v}.c{j}.4"))
    slots = [(1, 2), (2, 3), (3, 1)] if inst.family == "planar-a4" else [(1, 3), (4, 6), (7, 9)]
    for j, clause in enumerate(f.clauses, 1):
        k = _first_true_literal(clause, assignment)
        for idx, (lit, (s1, s2)) in enumerate(zip(clause, slots), 1):
            if idx == k:
                continue
            v = abs(lit)
            t1, t2 = (1, 2) if lit > 0 else (2, 3)
            s.add(e(f"cyc{v}.c{j}.{t1}", f"clause{j}.a{s1}"))
            s.add(e(f"cyc{v}.c{j}.{t2}", f"clause{j}.a{s2}"))
    return frozenset(s)


def planar_witness_backward(inst: GadgetInstance, s: EdgeSet) -> dict[int, bool]:
    s = frozenset(canonical_edge(*x) for x in s)
    if len(s) != inst.budget:
        raise InvalidWitness(f"solution has {len(s)} edges, budget is {inst.budget}")
    try:
        ok = validate_cc(inst.graph, s, inst.budget)
    except ValueError as exc:
        raise InvalidWitness(str(exc)) from exc
    if not ok:
        raise InvalidWitness("edge set does not make the graph colourful")
    f = inst.formula
    assignment = {}
    for v in f.variables:
        j = _clause_order(f, v)[0]
        if inst.edge(f"cyc{v}.c{j}.1", f"cyc{v}.c{j}.2") in s:
            assignment[v] = False
        elif inst.edge(f"cyc{v}.c{j}.2", f"cyc{v}.c{j}.3") in s:
            assignment[v] = True
        else:
            raise InvalidWitness(f"variable cycle {v} is not cut alternately")
    if not f.satisfied_by(assignment):
        raise InvalidWitness("recovered assignment does not satisfy the formula")
    return assignment


def build_instance(f: CnfFormula, family: Family) -> GadgetInstance:
    if family in TREE_FAMILIES:
        return build_tree_instance(f, family)
    return build_planar_instance(f, family)


def witness_forward(inst: GadgetInstance, assignment: Assignment) -> EdgeSet:
    if inst.family in TREE_FAMILIES:
        return tree_witness_forward(inst, assignment)
    return planar_witness_forward(inst, assignment)


def witness_backward(inst: GadgetInstance, s: EdgeSet) -> dict[int, bool]:
    if inst.family in TREE_FAMILIES:
        return tree_witness_backward(inst, s)
    return planar_witness_backward(inst, s)


# -- shape checks ----------------------------------------------------------


@dataclass
class ShapeReport:
    family: str
    violations: list[str]
    stats: dict[str, int]

    @property
    def ok(self) -> bool:
        return not self.violations


_TREE_SHAPE = {"binary4": (2, 4), "ternary3": (3, 3), "quaternary2": (4, 2)}


def _bfs_dist(adj, sources) -> list[int]:
    dist = [-1] * len(adj)
    queue = deque(sources)
    for s in sources:
        dist[s] = 0
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if dist[y] < 0:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def check_instance_shape(inst: GadgetInstance) -> ShapeReport:
    """Check the degree, hair length, colour and budget claims for an instance."""
    g = inst.graph
    f = inst.formula
    adj = [list(a) for a in g.adjacency]
    deg = [len(a) for a in adj]
    colour_count = Counter(g.colours.tolist())
    multiplicity = max(colour_count.values()) if colour_count else 0
    stats = {
        "vertices": g.n,
        "edges": g.m,
        "colours": len(colour_count),
        "max_degree": max(deg) if deg else 0,
        "multiplicity": multiplicity,
    }
    bad: list[str] = []
    m = len(f.clauses)

    if inst.family in TREE_FAMILIES:
        children, hair = _TREE_SHAPE[inst.family]
        m3 = sum(len(c) == 3 for c in f.clauses)
        if inst.budget != tree_budget(f):
            bad.append(f"budget {inst.budget} != n + 2*m3 + m2 = {tree_budget(f)}")
        dist = _bfs_dist(adj, [0]) if g.n else []
        if g.m != g.n - 1 or any(d < 0 for d in dist):
            bad.append("graph is not a tree")
        spine = list(inst.backbone)
        for a, c in zip(spine, spine[1:]):
            if c not in adj[a]:
                bad.append(f"backbone vertices {a} and {c} are not adjacent")
        hairs = _bfs_dist(adj, spine) if spine else [0] * g.n
        stats["hair_length"] = max(hairs) if hairs else 0
        if any(h < 0 for h in hairs) or stats["hair_length"] > hair:
            bad.append(f"hair length {stats['hair_length']} exceeds {hair}")
        if spine:
            root = min(spine, key=lambda v: (deg[v], v))
            depth = _bfs_dist(adj, [root])
            most = 0
            for v in range(g.n):
                kids = sum(1 for y in adj[v] if depth[y] == depth[v] + 1)
                most = max(most, kids)
            stats["max_children"] = most
            if most > children:
                bad.append(f"a vertex has {most} children, bound is {children}")
        want = 3 if inst.family == "quaternary2" and m3 else 2
        if multiplicity != want:
            bad.append(f"colour multiplicity {multiplicity}, expected {want}")
    else:
        max_deg, colours, gadget_size = (4, 5, 3) if inst.family == "planar-a4" else (3, 12, 10)
        if inst.budget != 10 * m:
            bad.append(f"budget {inst.budget} != 10*m = {10 * m}")
        if stats["max_degree"] > max_deg:
            bad.append(f"maximum degree {stats['max_degree']} exceeds {max_deg}")
        if stats["colours"] != colours:
            bad.append(f"{stats['colours']} colours, expected {colours}")
        if g.n != 12 * m + gadget_size * m:
            bad.append(f"{g.n} vertices, expected {12 * m + gadget_size * m}")
        edges = g.edge_set()
        for v in f.variables:
            order = _clause_order(f, v)
            ring = [inst.roles[f"cyc{v}.c{j}.{t}"] for j in order for t in (1, 2, 3, 4)]
            for a, c in zip(ring, ring[1:] + ring[:1]):
                if canonical_edge(a, c) not in edges:
                    bad.append(f"variable cycle {v} is broken")
                    break
            odd = {g.colour(x) for x in ring[0::2]}
            even = {g.colour(x) for x in ring[1::2]}
            if len(odd) != 1 or len(even) != 1 or odd == even:
                bad.append(f"variable cycle {v} is not 2-coloured alternately")
        expected_edges = 12 * m + m * (3 if inst.family == "planar-a4" else 12) + 6 * m
        if g.m != expected_edges:
            bad.append(f"{g.m} edges, expected {expected_edges}")
    return ShapeReport(inst.family, bad, stats)


def corrupt_with_extra_edge(inst: GadgetInstance) -> GadgetInstance:
    """Copy of ``inst`` with one extra edge (for negative shape tests)."""
    g = inst.graph
    present = g.edge_set()
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if (u, v) not in present:
                edges = np.vstack([g.edges, [[u, v]]])
                return GadgetInstance(ColouredGraph(g.colours, edges, g.num_colours), inst.budget,
                                      inst.family, inst.formula, inst.roles, inst.backbone)
    raise ValueError("graph is complete")
