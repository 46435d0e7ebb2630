import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from colourful.core import (
    ColouredGraph,
    colour_conflict,
    connected_components,
    edges_to_partition,
    is_colourful,
    validate_cc,
    validate_cp,
)
from colourful.errors import GraphError, InvalidPartition, InvalidSolution
from colourful import oracle

# vertices a..i of the first figure; a and g share a colour
A, B, C, D, E, F, G, H, I = range(9)
FIGURE_ONE_COLOURS = [0, 7, 9, 11, 7, 5, 0, 5, 9]
INSIDE = [(A, B), (B, C), (A, C), (D, E), (E, F), (F, G), (E, G), (D, F), (D, G), (H, I)]
BETWEEN = [(A, E), (A, D), (E, H)]


def test_construction_canonicalises_edges():
    g = ColouredGraph([0, 1, 0], [(2, 1), (1, 0)])
    assert g.edge_list() == [(1, 2), (0, 1)]
    assert g.num_colours == 2
    assert g.neighbours(1) == (0, 2)


@pytest.mark.parametrize(
    "colours, edges",
    [([0, 0], [(0, 0)]), ([0, 1], [(0, 1), (1, 0)]), ([0, 1], [(0, 2)]), ([-1], [])],
)
def test_construction_rejects_bad_input(colours, edges):
    with pytest.raises(GraphError):
        ColouredGraph(colours, edges)


def test_colour_bound_checked():
    with pytest.raises(GraphError):
        ColouredGraph([0, 3], [], num_colours=2)


def test_components_examples():
    assert connected_components(ColouredGraph([], [])) == []
    assert connected_components(ColouredGraph([0, 1], [(0, 1)])) == [frozenset({0, 1})]
    p5 = ColouredGraph([1, 2, 1, 2, 3], [(0, 1), (2, 3), (3, 4)])
    assert connected_components(p5) == [frozenset({0, 1}), frozenset({2, 3, 4})]


def test_is_colourful_examples():
    assert is_colourful(ColouredGraph([0, 0], []))
    g = ColouredGraph([0, 0], [(0, 1)])
    assert not is_colourful(g)
    assert colour_conflict(g) == (0, 1)


def test_figure_one_components_are_colourful():
    outlined = ColouredGraph(FIGURE_ONE_COLOURS, INSIDE)
    assert is_colourful(outlined)
    assert len(connected_components(outlined)) == 3
    whole = ColouredGraph(FIGURE_ONE_COLOURS, INSIDE + BETWEEN)
    assert not is_colourful(whole)
    assert validate_cc(whole, BETWEEN, 3)
    assert len(oracle.bb_min_cc(whole)) == 3


def test_validate_cc_examples(p5):
    assert validate_cc(ColouredGraph([0, 1], [(0, 1)]), [], 0)
    assert validate_cc(ColouredGraph([0, 0], [(0, 1)]), [(0, 1)], 1)
    assert validate_cc(p5, [(1, 2)], 1)
    assert not validate_cc(p5, [(1, 2)], 0)
    assert not validate_cc(p5, [(0, 1)], 1)
    with pytest.raises(InvalidSolution):
        validate_cc(p5, [(0, 4)], 1)


def test_validate_cp_examples(p5):
    g = ColouredGraph([0, 1, 2], [(0, 1), (1, 2)])
    assert validate_cp(g, [{0, 1, 2}], 1)
    assert validate_cp(p5, [{0, 1}, {2, 3, 4}], 2)
    assert not validate_cp(p5, [{0, 2}, {1}, {3}, {4}], 4)
    assert not validate_cp(p5, [{0, 1}, {2, 3, 4}], 1)
    with pytest.raises(InvalidPartition):
        validate_cp(p5, [{0, 1}, {1, 2, 3, 4}], 2)
    with pytest.raises(InvalidPartition):
        validate_cp(p5, [{0, 1}, {2, 3}], 2)


def test_edges_to_partition_examples(p5):
    assert edges_to_partition(p5, []) == [frozenset(range(5))]
    assert edges_to_partition(p5, [(1, 2)]) == [frozenset({0, 1}), frozenset({2, 3, 4})]


@st.composite
def small_graphs(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    colours = draw(st.lists(st.integers(0, 3), min_size=n, max_size=n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=12)) if pairs else []
    return ColouredGraph(colours, edges, 4)


@settings(max_examples=150, deadline=None)
@given(small_graphs(), st.data())
def test_partition_of_deletion_validates_iff_colourful(g, data):
    s = data.draw(st.sets(st.sampled_from(g.edge_list()))) if g.m else set()
    rest = g.remove_edges(s)
    parts = edges_to_partition(g, s)
    assert validate_cp(g, parts, len(parts)) == is_colourful(rest)


@settings(max_examples=150, deadline=None)
@given(small_graphs())
def test_conflict_witness(g):
    w = colour_conflict(g)
    assert (w is None) == is_colourful(g)
    if w is not None:
        u, v = w
        assert g.colour(u) == g.colour(v)
        assert any(u in c and v in c for c in connected_components(g))


def _random_tree(rng, n, colours):
    parent = [int(rng.integers(0, i)) for i in range(1, n)]
    return ColouredGraph(rng.integers(0, colours, n), [(p, i + 1) for i, p in enumerate(parent)], colours)


def test_tree_cc_equals_cp_minus_one():
    # every tree up to 9 vertices drawn from a fixed seed sweep
    for seed in range(120):
        rng = np.random.default_rng(seed)
        g = _random_tree(rng, int(rng.integers(1, 10)), int(rng.integers(1, 5)))
        assert len(oracle.bb_min_cc(g)) == len(oracle.brute_min_cp(g)) - 1


def test_remove_edges_and_induced():
    g = ColouredGraph([0, 1, 2, 0], [(0, 1), (1, 2), (2, 3)])
    h = g.remove_edges([(2, 1)])
    assert h.edge_list() == [(0, 1), (2, 3)]
    sub, old = g.induced([3, 1, 2])
    assert old == [1, 2, 3]
    assert sub.edge_list() == [(0, 1), (1, 2)]
    assert g == ColouredGraph([0, 1, 2, 0], [(0, 1), (1, 2), (2, 3)])
    assert hash(g) == hash(ColouredGraph([0, 1, 2, 0], [(1, 0), (1, 2), (2, 3)]))
