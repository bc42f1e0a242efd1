import itertools
import random

import networkx as nx
import pytest
from hypothesis import given
import hypothesis.strategies as st

from kayles import generators
from kayles.graph import (INF, DuplicateEdgeError, EdgeCountError, Graph, GraphError,
                          HeaderError, IndexRangeError, SelfLoopError, connected_components,
                          feedback_edge_number, format_graph, girth, is_bipartite,
                          is_connected, is_forest, mask_of, parse_graph, peel_to_core,
                          twin_classes, two_core)
from kayles.iso import IsoBucket, find_isomorphism, is_isomorphism, wl_hash

from conftest import connected_graphs, trees


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


# -- parsing ---------------------------------------------------------------------

def test_parse_path():
    g = parse_graph("3 2\n0 1\n1 2\n")
    assert g.n == 3 and g.edges() == [(0, 1), (1, 2)]


def test_parse_single_vertex():
    g = parse_graph("1 0\n")
    assert g.n == 1 and g.m == 0


def test_parse_comments_and_bytes():
    g = parse_graph(b"# a triangle\n3 3\n# edges\n0 1\n1 2\n0 2\n")
    assert g.m == 3


@pytest.mark.parametrize("text, exc, line", [
    ("2 1\n0 0\n", SelfLoopError, 2),
    ("2 1\n0 2\n", IndexRangeError, 2),
    ("3 2\n0 1\n1 0\n", DuplicateEdgeError, 3),
    ("3\n", HeaderError, 1),
    ("x y\n", HeaderError, 1),
    ("3 2\n0 1\n", EdgeCountError, None),
    ("", HeaderError, None),
])
def test_parse_errors(text, exc, line):
    with pytest.raises(exc) as info:
        parse_graph(text)
    assert info.value.line == line


def test_parse_errors_are_distinct():
    kinds = {SelfLoopError, IndexRangeError, DuplicateEdgeError, HeaderError, EdgeCountError}
    assert len(kinds) == 5


@given(connected_graphs(max_n=10))
def test_format_roundtrip(g):
    text = format_graph(g)
    assert parse_graph(text) == g
    assert format_graph(parse_graph(text)) == text


def test_format_is_byte_exact():
    g = Graph.from_edges(3, [(2, 1), (1, 0)])
    assert format_graph(g) == "3 2\n0 1\n1 2\n"


def test_graph_rejects_self_loop():
    with pytest.raises(GraphError):
        Graph.from_edges(2, [(1, 1)])


# -- structure -------------------------------------------------------------------

def test_is_connected_examples():
    p4 = generators.path(4)
    assert is_connected(p4)
    assert not is_connected(p4, mask_of([0, 2]))
    assert is_connected(p4, 0)


def test_components_examples():
    p4 = generators.path(4)
    assert connected_components(p4, mask_of([0, 1, 3])) == [mask_of([0, 1]), mask_of([3])]
    assert connected_components(p4) == [p4.full]
    assert connected_components(p4, 0) == []


@given(connected_graphs(max_n=10), st.integers(0, 2**10 - 1))
def test_components_partition(g, raw):
    alive = raw & g.full
    comps = connected_components(g, alive)
    union = 0
    for c in comps:
        assert c & union == 0
        assert is_connected(g, c)
        union |= c
    assert union == alive
    ref = sorted(sorted(c) for c in nx.connected_components(to_nx(g).subgraph(
        [v for v in range(g.n) if alive >> v & 1])))
    assert sorted(sorted(v for v in range(g.n) if c >> v & 1) for c in comps) == ref


def test_two_core_examples():
    c4_leaf = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)])
    d = two_core(c4_leaf)
    assert d.core == 0b1111
    assert d.hanging_trees == [(0, 1 << 4)]
    assert two_core(generators.path(5)).core == 0
    # two triangles joined by a path with three internal vertices
    g = Graph.from_edges(9, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (5, 6),
                             (6, 7), (7, 8), (6, 8)])
    assert two_core(g).core == g.full


def test_two_core_rejects_disconnected():
    with pytest.raises(GraphError):
        two_core(Graph.empty(2))


@given(connected_graphs(max_n=12, max_extra=3), st.integers(0, 1000))
def test_two_core_order_independent(g, seed):
    rnd = random.Random(seed)
    assert peel_to_core(g, order=lambda k: rnd.randrange(k)) == peel_to_core(g)
    core = peel_to_core(g)
    assert core == mask_of(nx.k_core(to_nx(g), 2).nodes)


def test_feedback_edge_number_examples():
    assert feedback_edge_number(generators.path(6)) == 0
    assert feedback_edge_number(generators.cycle(5)) == 1
    assert feedback_edge_number(generators.complete(4)) == 3


@given(connected_graphs(max_n=10))
def test_fen_zero_iff_forest(g):
    assert (feedback_edge_number(g) == 0) == is_forest(g) == nx.is_forest(to_nx(g))


def test_girth_examples():
    assert girth(generators.cycle(6)) == 6
    assert girth(generators.star(4)) == INF
    assert girth(generators.complete(4)) == 3


@given(connected_graphs(max_n=9))
def test_girth_and_bipartite_match_networkx(g):
    h = to_nx(g)
    cycles = nx.minimum_cycle_basis(h)
    expected = min((len(c) for c in cycles), default=INF)
    assert girth(g) == expected
    assert is_bipartite(g) == nx.is_bipartite(h)


def test_twin_classes_examples():
    assert mask_of([1, 2, 3]) in twin_classes(generators.star(3))
    assert twin_classes(generators.complete(3)) == [0b111]
    p4 = generators.path(4)
    assert all(not (c >> 0 & 1 and c >> 3 & 1) for c in twin_classes(p4))


@given(connected_graphs(max_n=8))
def test_twin_classes_definition(g):
    classes = twin_classes(g)
    owner = {v: i for i, c in enumerate(classes) for v in range(g.n) if c >> v & 1}
    assert sorted(owner) == list(range(g.n))
    for u, v in itertools.combinations(range(g.n), 2):
        twins = g.adj[u] & ~(1 << v) == g.adj[v] & ~(1 << u)
        assert twins == (owner[u] == owner[v])


# -- generators ------------------------------------------------------------------

def test_generator_examples():
    assert generators.path(3).edges() == [(0, 1), (1, 2)]
    grid = generators.grid(2, 2)
    assert find_isomorphism(grid, generators.cycle(4)) is not None
    star = generators.threshold("iiu")
    assert find_isomorphism(star, generators.star(2)) is not None


@given(st.integers(1, 6), st.integers(1, 6))
def test_grid_counts(r, c):
    g = generators.grid(r, c)
    assert g.n == r * c and g.m == r * (c - 1) + c * (r - 1)


def test_generator_errors():
    with pytest.raises(GraphError):
        generators.random_connected(4, 2, 0)
    with pytest.raises(GraphError):
        generators.random_connected(4, 7, 0)
    with pytest.raises(GraphError):
        generators.generate("nosuch:3")
    with pytest.raises(GraphError):
        generators.generate("path:x")


@given(st.integers(1, 12), st.integers(0, 2**32 - 1))
def test_random_connected_properties(n, seed):
    m = min(n * (n - 1) // 2, n + 2)
    g = generators.random_connected(n, m, seed)
    assert (g.n, g.m) == (n, m) and is_connected(g)
    assert g == generators.random_connected(n, m, seed)


@given(st.integers(5, 14), st.integers(1, 4), st.integers(0, 2**32 - 1))
def test_random_with_fen(n, fen, seed):
    g = generators.random_with_fen(seed, n, fen)
    assert g.n == n and is_connected(g) and feedback_edge_number(g) == fen


@pytest.mark.parametrize("n", [20, 40, 80, 160])
def test_pendant_theta(n):
    g = generators.pendant_theta(n)
    assert g.n == n and is_connected(g) and feedback_edge_number(g) == 2


def test_threshold_word_builds_figure_shape():
    word = generators.threshold_word([2, 1, 1], [1, 1, 1])
    g = generators.threshold(word)
    assert g.n == 7


def test_clique_tree_generator_is_block_graph():
    g = generators.clique_tree(3, [3, 2, 4, 2])
    assert g.n == 1 + 2 + 1 + 3 + 1 and is_connected(g)
    for block in nx.biconnected_components(to_nx(g)):
        k = len(block)
        assert to_nx(g).subgraph(block).number_of_edges() == k * (k - 1) // 2


# -- isomorphism -----------------------------------------------------------------

def test_isomorphism_examples():
    p3 = generators.path(3)
    relabelled = Graph.from_edges(3, [(0, 2), (2, 1)])
    phi = find_isomorphism(p3, relabelled)
    assert phi is not None and is_isomorphism(p3, relabelled, phi)
    assert find_isomorphism(p3, generators.complete(3)) is None
    two_triangles = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert find_isomorphism(generators.cycle(6), two_triangles) is None


def test_isomorphism_cap():
    with pytest.raises(GraphError):
        find_isomorphism(generators.path(13), generators.path(13))


@given(connected_graphs(max_n=8), st.randoms())
def test_isomorphism_of_relabelling(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    h = Graph.from_edges(g.n, [(perm[u], perm[v]) for u, v in g.edges()])
    phi = find_isomorphism(g, h)
    assert phi is not None and is_isomorphism(g, h, phi)
    assert wl_hash(g) == wl_hash(h)


def test_iso_bucket_counts_atlas():
    bucket = IsoBucket()
    for h in nx.graph_atlas_g()[1:53]:  # all graphs on 1..5 vertices
        g = Graph.from_edges(h.number_of_nodes(), list(h.edges()))
        assert bucket.add(g)
        perm = list(reversed(range(g.n)))
        assert not bucket.add(Graph.from_edges(g.n, [(perm[u], perm[v]) for u, v in g.edges()]))
    assert len(bucket.graphs) == 52
