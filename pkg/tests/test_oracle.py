import numpy as np
import pytest

from colourful import caterpillar as cat, oracle
from colourful.core import ColouredGraph, validate_cc, validate_cp
from colourful.errors import InstanceTooLarge, NodeLimitExceeded, TooManyVariables
from colourful.generators import random_caterpillar
from colourful.reductions import CnfFormula


def _random_graph(rng, n, p, colours):
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return ColouredGraph(rng.integers(0, colours, n), edges, colours)


def test_colour_critical_examples(p5):
    colourful = ColouredGraph([0, 1, 2], [(0, 1), (1, 2)])
    assert len(oracle.enumerate_colour_critical(colourful, cat.recognize(colourful))) == 0
    assert oracle.enumerate_colour_critical(p5, cat.recognize(p5)).pairs() == [(0, 2), (1, 3)]
    g = ColouredGraph([7, 1, 7, 2, 7], [(0, 1), (1, 2), (2, 3), (3, 4)])
    assert oracle.enumerate_colour_critical(g, cat.recognize(g)).pairs() == [(0, 2), (2, 4)]


def test_colour_critical_through_leaves():
    # colour 5 on a leaf of star 0, on backbone vertex 2 and on a leaf of star 3
    g = ColouredGraph([0, 1, 5, 2, 5, 5], [(0, 1), (1, 2), (2, 3), (0, 4), (3, 5)])
    cs = cat.recognize(g)
    got = oracle.enumerate_colour_critical(g, cs)
    assert got.counter() == cat.scan_arcs(g, cs).counter()


def test_bb_examples(figure_graph):
    assert oracle.bb_min_cc(ColouredGraph([0, 1], [(0, 1)])) == frozenset()
    assert oracle.bb_min_cc(ColouredGraph([0, 0], [(0, 1)])) == {(0, 1)}
    s = oracle.bb_min_cc(figure_graph)
    assert len(s) == 7 and validate_cc(figure_graph, s, 7)


def test_bb_depth_and_node_limit(figure_graph):
    assert oracle.bb_min_cc(figure_graph, oracle.SearchBudget(max_depth=6)) is None
    assert len(oracle.bb_min_cc(figure_graph, oracle.SearchBudget(max_depth=7))) == 7
    with pytest.raises(NodeLimitExceeded):
        oracle.bb_min_cc(figure_graph, oracle.SearchBudget(node_limit=1))
    with pytest.raises(ValueError):
        oracle.SearchBudget(max_depth=-1)


def test_bb_matches_exhaustive_on_general_graphs():
    rng = np.random.default_rng(7)
    for _ in range(120):
        n = int(rng.integers(1, 9))
        g = _random_graph(rng, n, 0.45, int(rng.integers(1, 4)))
        if g.m > 14:
            continue
        s = oracle.bb_min_cc(g)
        assert validate_cc(g, s, len(s))
        assert len(s) == len(oracle.exhaustive_min_cc(g))


def test_ilp_matches_bb():
    rng = np.random.default_rng(11)
    for _ in range(60):
        g = _random_graph(rng, int(rng.integers(2, 10)), 0.4, int(rng.integers(1, 4)))
        s = oracle.ilp_min_cc(g)
        assert validate_cc(g, s, len(s))
        assert len(s) == len(oracle.bb_min_cc(g))
    for seed in range(40):
        g = random_caterpillar(12, 4, seed, cyclic=True)
        assert len(oracle.ilp_min_cc(g)) == len(oracle.bb_min_cc(g))
        opt = len(oracle.bb_min_cc(g))
        if opt:
            assert oracle.ilp_min_cc(g, oracle.SearchBudget(max_depth=opt - 1)) is None


def test_brute_cp_examples(p5):
    g = ColouredGraph([0, 1, 2], [(0, 1), (1, 2)])
    assert oracle.brute_min_cp(g) == [frozenset({0, 1, 2})]
    parts = oracle.brute_min_cp(p5)
    assert len(parts) == 2 and validate_cp(p5, parts, 2)
    with pytest.raises(InstanceTooLarge):
        oracle.brute_min_cp(ColouredGraph([0] * 15, []))
    assert oracle.brute_min_cp(ColouredGraph([], [])) == []


def test_brute_cp_on_general_graphs():
    # on non-trees CP can beat "CC optimum plus one"; the oracle only
    # promises a valid minimum, checked against a slower exhaustive count
    rng = np.random.default_rng(3)
    for _ in range(60):
        g = _random_graph(rng, int(rng.integers(1, 8)), 0.5, 3)
        parts = oracle.brute_min_cp(g)
        assert validate_cp(g, parts, len(parts))
        s = oracle.bb_min_cc(g)
        from colourful.core import edges_to_partition
        assert len(parts) <= len(edges_to_partition(g, s))


def test_sat_examples():
    assert oracle.sat_solve(CnfFormula(0, ())) == {}
    assert oracle.sat_solve(CnfFormula(1, ((1,), (-1,)))) is None
    f = CnfFormula(3, ((1, 2, 3), (-1, -2), (2, -3)))
    got = oracle.sat_solve(f)
    assert got is not None and f.satisfied_by(got)
    with pytest.raises(TooManyVariables):
        oracle.sat_solve(CnfFormula(27, tuple((v,) for v in range(1, 28))))


def test_sat_matches_truth_tables():
    import itertools
    rng = np.random.default_rng(5)
    for _ in range(200):
        n = int(rng.integers(1, 6))
        clauses = []
        for _ in range(int(rng.integers(1, 9))):
            k = int(rng.integers(1, min(3, n) + 1))
            vs = rng.choice(np.arange(1, n + 1), size=k, replace=False)
            clauses.append(tuple(int(v) * (1 if rng.random() < 0.5 else -1) for v in vs))
        f = CnfFormula(n, tuple(clauses))
        truth = any(
            f.satisfied_by(dict(zip(range(1, n + 1), bits)))
            for bits in itertools.product((False, True), repeat=n)
        )
        got = oracle.sat_solve(f)
        assert (got is not None) == truth
        if got is not None:
            assert f.satisfied_by(got)
