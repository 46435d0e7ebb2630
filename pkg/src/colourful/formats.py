"""Text formats: coloured graphs, solutions, DIMACS CNF, witness tables and DOT.

Graph files are line-oriented::

    # comment
    p ccg <n> <m> [<colours>]
    v <id> <colour>        (n lines)
    e <u> <v>              (m lines)
    bpath <ids...>         (optional backbone hint, or bcycle)

The optional colour count in the header is only written when some colour
ids at the top of the range are unused, so that round trips are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import ColouredGraph, Edge, EdgeSet, Partition, canonical_edge
from .errors import ClauseTooLarge, GraphError, ParseError
from .reductions import CnfFormula, GadgetInstance


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line.split()


def _int(tok: str, no: int, what: str, kind: str = "syntax-error") -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {tok!r}", no, kind) from None


@dataclass(frozen=True)
class GraphFile:
    graph: ColouredGraph
    hint: tuple[str, tuple[int, ...]] | None = None


def parse_graph(text: str) -> GraphFile:
    header = None
    colours: dict[int, int] = {}
    edges: list[Edge] = []
    seen_edges: dict[Edge, int] = {}
    hint = None
    for no, tok in _lines(text):
        tag = tok[0]
        if header is None:
            if tag != "p" or len(tok) not in (4, 5) or tok[1] != "ccg":
                raise ParseError("expected header 'p ccg <n> <m>'", no)
            vals = [_int(t, no, "header field") for t in tok[2:]]
            if min(vals) < 0:
                raise ParseError("header counts must be non-negative", no)
            header = vals
            continue
        n = header[0]
        if tag == "v":
            if len(tok) != 3:
                raise ParseError("expected 'v <id> <colour>'", no)
            v = _int(tok[1], no, "vertex id")
            c = _int(tok[2], no, "colour id", "bad-colour-id")
            if not 0 <= v < n:
                raise ParseError(f"vertex id {v} out of range 0..{n - 1}", no)
            if c < 0 or (len(header) == 3 and c >= header[2]):
                raise ParseError(f"bad colour id {c}", no, "bad-colour-id")
            if v in colours:
                raise ParseError(f"vertex {v} declared twice", no)
            colours[v] = c
        elif tag == "e":
            if len(tok) != 3:
                raise ParseError("expected 'e <u> <v>'", no)
            u, v = _int(tok[1], no, "vertex id"), _int(tok[2], no, "vertex id")
            if u == v:
                raise ParseError(f"self-loop at vertex {u}", no)
            if not (0 <= u < n and 0 <= v < n):
                raise ParseError(f"edge ({u}, {v}) has an endpoint out of range", no)
            e = canonical_edge(u, v)
            if e in seen_edges:
                raise ParseError(f"duplicate edge {e} (first on line {seen_edges[e]})", no, "duplicate-edge")
            seen_edges[e] = no
            edges.append(e)
        elif tag in ("bpath", "bcycle"):
            if hint is not None:
                raise ParseError("more than one backbone hint", no)
            ids = tuple(_int(t, no, "vertex id") for t in tok[1:])
            if not ids:
                raise ParseError("empty backbone hint", no)
            hint = ("path" if tag == "bpath" else "cycle", ids)
        else:
            raise ParseError(f"unknown line type {tag!r}", no)
    if header is None:
        raise ParseError("missing 'p ccg' header")
    n, m = header[0], header[1]
    if len(colours) != n:
        missing = next(v for v in range(n) if v not in colours)
        raise ParseError(f"header declares {n} vertices but vertex {missing} has no 'v' line")
    if len(edges) != m:
        raise ParseError(f"header declares {m} edges, found {len(edges)}")
    try:
        g = ColouredGraph([colours[v] for v in range(n)], edges, header[2] if len(header) == 3 else None)
    except GraphError as exc:
        raise ParseError(str(exc)) from exc
    return GraphFile(g, hint)


def write_graph(g: ColouredGraph, hint: tuple[str, Sequence[int]] | None = None, comments: Iterable[str] = ()) -> str:
    out = [f"# {c}" for c in comments]
    top = int(g.colours.max()) + 1 if g.n else 0
    extra = f" {g.num_colours}" if g.num_colours != top else ""
    out.append(f"p ccg {g.n} {g.m}{extra}")
    out.extend(f"v {v} {c}" for v, c in enumerate(g.colours.tolist()))
    out.extend(f"e {u} {v}" for u, v in g.edges.tolist())
    if hint is not None:
        kind, ids = hint
        out.append(("bpath " if kind == "path" else "bcycle ") + " ".join(map(str, ids)))
    return "\n".join(out) + "\n"


# -- solutions -------------------------------------------------------------


@dataclass(frozen=True)
class SolutionFile:
    kind: str  # "cc" or "cp"
    edges: EdgeSet | None = None
    parts: Partition | None = None

    @property
    def size(self) -> int:
        return len(self.edges) if self.kind == "cc" else len(self.parts)


def write_solution(sol: SolutionFile) -> str:
    if sol.kind == "cc":
        body = [f"e {u} {v}" for u, v in sorted(sol.edges)]
    else:
        body = [f"part {i}: " + " ".join(map(str, sorted(p))) for i, p in enumerate(sol.parts)]
    return "\n".join([f"s {sol.kind} {sol.size}"] + body) + "\n"


def cc_solution(edges: Iterable[Edge]) -> SolutionFile:
    return SolutionFile("cc", edges=frozenset(canonical_edge(*e) for e in edges))


def cp_solution(parts: Iterable[Iterable[int]]) -> SolutionFile:
    return SolutionFile("cp", parts=[frozenset(p) for p in parts])


def parse_solution(text: str) -> SolutionFile:
    kind = None
    size = 0
    edges: list[Edge] = []
    parts: list[frozenset[int]] = []
    for no, tok in _lines(text):
        if kind is None:
            if tok[0] != "s" or len(tok) != 3 or tok[1] not in ("cc", "cp"):
                raise ParseError("expected header 's cc <k>' or 's cp <k>'", no)
            kind = tok[1]
            size = _int(tok[2], no, "solution size")
            continue
        if kind == "cc":
            if tok[0] != "e" or len(tok) != 3:
                raise ParseError("expected 'e <u> <v>'", no)
            edges.append(canonical_edge(_int(tok[1], no, "vertex id"), _int(tok[2], no, "vertex id")))
        else:
            if tok[0] != "part" or len(tok) < 2 or not tok[1].endswith(":"):
                raise ParseError("expected 'part <id>: <vertex ids>'", no)
            if _int(tok[1][:-1], no, "part id") != len(parts):
                raise ParseError("part ids must count up from 0", no)
            parts.append(frozenset(_int(t, no, "vertex id") for t in tok[2:]))
    if kind is None:
        raise ParseError("missing solution header")
    sol = SolutionFile(kind, edges=frozenset(edges)) if kind == "cc" else SolutionFile(kind, parts=parts)
    if kind == "cc" and len(sol.edges) != len(edges):
        raise ParseError("solution lists an edge twice", kind="duplicate-edge")
    if sol.size != size:
        raise ParseError(f"header says {size} entries, found {sol.size}")
    return sol


# -- DIMACS CNF ------------------------------------------------------------


def parse_dimacs(text: str) -> CnfFormula:
    """Parse DIMACS CNF with at most three literals per clause."""
    header = None
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    start_line = 0
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        tok = line.split()
        if tok[0] == "p":
            if header is not None:
                raise ParseError("second 'p' line", no)
            if len(tok) != 4 or tok[1] != "cnf":
                raise ParseError("expected header 'p cnf <vars> <clauses>'", no)
            header = (_int(tok[2], no, "variable count"), _int(tok[3], no, "clause count"))
            if min(header) < 0:
                raise ParseError("header counts must be non-negative", no)
            continue
        if header is None:
            raise ParseError("clause before the 'p cnf' header", no)
        for t in tok:
            lit = _int(t, no, "literal")
            if lit == 0:
                if not current:
                    raise ParseError("empty clause", no)
                if len(set(current)) != len(current):
                    raise ParseError("clause repeats a literal", no)
                clauses.append(tuple(current))
                current = []
                continue
            if abs(lit) > header[0]:
                raise ParseError(f"literal {lit} exceeds the declared {header[0]} variables", no)
            if not current:
                start_line = no
            current.append(lit)
            if len(current) > 3:
                raise ClauseTooLarge("clause has more than 3 literals", start_line)
    if header is None:
        raise ParseError("missing 'p cnf' header")
    if current:
        raise ParseError("last clause is not terminated by 0", start_line)
    if len(clauses) != header[1]:
        raise ParseError(f"header declares {header[1]} clauses, found {len(clauses)}")
    return CnfFormula(header[0], tuple(clauses))


def write_dimacs(f: CnfFormula) -> str:
    out = [f"p cnf {f.n_vars} {len(f.clauses)}"]
    out.extend(" ".join(map(str, c)) + " 0" for c in f.clauses)
    return "\n".join(out) + "\n"


# -- witness sidecar -------------------------------------------------------


def write_witness(inst: GadgetInstance) -> str:
    """Role table of a generated instance: one ``<role> <vertex id>`` per line."""
    out = [f"# family {inst.family}", f"# budget {inst.budget}"]
    out.extend(f"{role} {v}" for role, v in sorted(inst.roles.items(), key=lambda kv: (kv[1], kv[0])))
    return "\n".join(out) + "\n"


def parse_witness(text: str) -> dict[str, int]:
    roles = {}
    for no, tok in _lines(text):
        if len(tok) != 2:
            raise ParseError("expected '<role> <vertex id>'", no)
        roles[tok[0]] = _int(tok[1], no, "vertex id")
    return roles


# -- DOT -------------------------------------------------------------------


def to_dot(g: ColouredGraph, solution: Iterable[Edge] = (), backbone: Sequence[int] = ()) -> str:
    """DOT rendering; deleted edges are dashed and backbone edges bold."""
    cut = {canonical_edge(*e) for e in solution}
    spine = set()
    bb = list(backbone)
    for a, b in zip(bb, bb[1:]):
        spine.add(canonical_edge(a, b))
    out = ["graph G {", "  node [shape=circle];"]
    for v, c in enumerate(g.colours.tolist()):
        out.append(f'  {v} [label="{v}\\nc{c}"];')
    for u, v in g.edges.tolist():
        style = []
        if (u, v) in cut:
            style.append("style=dashed")
        if (u, v) in spine:
            style.append("penwidth=3")
        attrs = f" [{', '.join(style)}]" if style else ""
        out.append(f"  {u} -- {v}{attrs};")
    out.append("}")
    return "\n".join(out) + "\n"
