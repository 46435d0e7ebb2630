"""Enumeration of small CNF formulas up to symmetry."""

from __future__ import annotations

import itertools

from colourful.reductions import CnfFormula, is_simplified


def _canonical(clauses, n_vars, polarity_flips=True):
    best = None
    for perm in itertools.permutations(range(1, n_vars + 1)):
        flips = itertools.product((1, -1), repeat=n_vars) if polarity_flips else [(1,) * n_vars, (-1,) * n_vars]
        for flip in flips:
            def lit(l):
                v = abs(l)
                return perm[v - 1] * (1 if l > 0 else -1) * flip[v - 1]
            if polarity_flips:
                form = tuple(sorted(tuple(sorted(map(lit, c), key=lambda x: (abs(x), x))) for c in clauses))
            else:
                # literal order matters to the planar gadgets only up to rotation
                rots = []
                for c in clauses:
                    mapped = tuple(map(lit, c))
                    rots.append(min(mapped[i:] + mapped[:i] for i in range(len(mapped))))
                form = tuple(sorted(rots))
            if best is None or form < best:
                best = form
    return best


def _clauses(n_vars, sizes, distinct_vars=True):
    lits = [v * s for v in range(1, n_vars + 1) for s in (1, -1)]
    out = []
    for k in sizes:
        for c in itertools.combinations(lits, k):
            if distinct_vars and len({abs(l) for l in c}) != k:
                continue
            out.append(c)
    return out


def simplified_tree_formulas(max_vars=4, max_clauses=3):
    """Every simplified 3,3-CNF with all variables used, one per symmetry class.

    Symmetries: renaming variables, flipping a variable's polarity, and
    reordering clauses or the literals inside a clause.
    """
    seen = set()
    out = []
    for n in range(1, max_vars + 1):
        pool = _clauses(n, (2, 3))
        for m in range(1, max_clauses + 1):
            for combo in itertools.combinations_with_replacement(pool, m):
                if len({abs(l) for c in combo for l in c}) != n:
                    continue
                f = CnfFormula(n, combo)
                if not is_simplified(f) or max(f.occurrence_counts.values()) > 3:
                    continue
                key = _canonical(combo, n)
                if key in seen:
                    continue
                seen.add(key)
                out.append(CnfFormula(n, key))
    return out


def _relabel(clauses):
    names = {}
    out = []
    for c in clauses:
        row = []
        for l in c:
            v = names.setdefault(abs(l), len(names) + 1)
            row.append(v if l > 0 else -v)
        out.append(tuple(row))
    return tuple(out)


def _planar_key(clauses):
    best = None
    for order in itertools.permutations(clauses):
        for rot in itertools.product(range(3), repeat=len(order)):
            turned = [c[r:] + c[:r] for c, r in zip(order, rot)]
            for sign in (1, -1):
                form = _relabel([tuple(sign * l for l in c) for c in turned])
                if best is None or form < best:
                    best = form
    return best


def _raw_planar(m):
    # formulas whose variables are numbered in order of first appearance
    def grow(prefix, used):
        if len(prefix) == 3 * m:
            yield prefix, used
            return
        clause_vars = {abs(l) for l in prefix[len(prefix) - len(prefix) % 3:]}
        for v in range(1, used + 2):
            if v in clause_vars:
                continue
            for s in (1, -1):
                yield from grow(prefix + (s * v,), max(used, v))
    for lits, used in grow((), 0):
        yield used, tuple(tuple(lits[i:i + 3]) for i in range(0, 3 * m, 3))


def planar_formulas(max_clauses=2):
    """3-literal formulas on distinct variables per clause, up to renaming,
    clause order, literal rotation and a global polarity flip."""
    out = []
    for m in range(1, max_clauses + 1):
        seen = set()
        for n, clauses in _raw_planar(m):
            key = _planar_key(clauses)
            if key not in seen:
                seen.add(key)
                out.append(CnfFormula(max(abs(l) for c in key for l in c), key))
    return out
