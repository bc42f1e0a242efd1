import random

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from kayles import generators
from kayles.graph import Graph, GraphError, girth, is_bipartite, is_connected, iter_bits
from kayles.iso import find_isomorphism
from kayles.reductions import (DNFFormula, avoid_true_moves, avoid_true_outcome,
                               avoidtrue_to_csgk, format_dnf, gi_gadget, is_split, ndnk_gadget,
                               nk_to_csg, nk_to_csg_vertex_count, parse_dnf, split_clique_of)
from kayles.rulesets import NDNodeKayles, NodeKayles, csg, legal_moves
from kayles.solver import Outcome, Solver, outcome_of, solve_grundy
from kayles.suites import check_avoid_true, connected_graphs, random_dnf

from conftest import connected_graphs as graphs


def brute_avoid_true(f, true_set=0):
    """Plain recursion over the game definition."""
    for x in range(f.variable_count):
        if true_set >> x & 1:
            continue
        after = true_set | (1 << x)
        if f.satisfied(after):
            continue
        if not brute_avoid_true(f, after):
            return True
    return False


# -- Avoid True --------------------------------------------------------------------

@pytest.mark.parametrize("n, clauses, want", [
    (2, [{0, 1}], Outcome.N),
    (1, [{0}], Outcome.P),
    (2, [{0}, {1}], Outcome.P),
    (3, [], Outcome.N),
    (2, [], Outcome.P),
])
def test_avoid_true_examples(n, clauses, want):
    assert avoid_true_outcome(DNFFormula.of(n, clauses)).outcome == want


@given(st.integers(0, 2**32 - 1))
def test_avoid_true_matches_brute_force(seed):
    f = random_dnf(random.Random(seed))
    won = avoid_true_outcome(f).outcome == Outcome.N
    assert won == brute_avoid_true(f)


def test_avoid_true_moves_skip_satisfying():
    f = DNFFormula.of(3, [{0, 1}])
    assert avoid_true_moves(f, 0b001) == [2]


def test_dnf_roundtrip():
    f = DNFFormula.of(4, [{0, 2}, {1, 3}, {3}])
    assert parse_dnf(format_dnf(f)) == f


@pytest.mark.parametrize("text, match", [
    ("1 2\n", "header"),
    ("p dnf 2 1\n0 5\n", "out of range"),
    ("p dnf 2 1\n0 x\n", "non-integer"),
    ("p dnf 2 2\n0 1\n", "declares 2"),
    ("", "missing"),
])
def test_parse_dnf_errors(text, match):
    with pytest.raises(ValueError, match=match):
        parse_dnf(text)


def test_dnf_rejects_empty_clause():
    with pytest.raises(ValueError):
        DNFFormula.of(2, [set()])


# -- Node-Kayles -> CSG(S) ---------------------------------------------------------

def test_nk_gadget_on_triangle():
    gadget = nk_to_csg(generators.complete(3), {2, 3})
    assert gadget.graph.n == 26 == nk_to_csg_vertex_count(3, 3, 3)
    assert len(gadget.vertices_with_role("vertex-centre")) == 3


@given(graphs(max_n=6), st.sampled_from([(2,), (3,), (2, 3), (2, 4)]))
def test_nk_gadget_vertex_count(g, s):
    gadget = nk_to_csg(g, s)
    assert gadget.graph.n == nk_to_csg_vertex_count(g.n, g.m, max(s))
    assert is_connected(gadget.graph)


def test_nk_gadget_rejects_one():
    with pytest.raises(GraphError, match="1 not in S"):
        nk_to_csg(generators.path(2), {1, 2})


@given(graphs(max_n=5), st.sampled_from([4, 6, 8]))
@settings(max_examples=20)
def test_nk_gadget_girth(g, target):
    gadget = nk_to_csg(g, {2, 3}, target_girth=target)
    assert girth(gadget.graph) >= target
    assert is_bipartite(gadget.graph)


def test_nk_gadget_moves_take_one_centre():
    g = generators.path(3)
    gadget = nk_to_csg(g, {2, 3})
    centres = set(gadget.vertices_with_role("vertex-centre"))
    h = gadget.graph
    for m in legal_moves(csg(2, 3), h, h.full):
        # a single move never removes two vertex centres
        assert len(centres & set(iter_bits(m))) <= 1


@pytest.mark.parametrize("s", [(2,), (3,), (2, 3)])
def test_nk_gadget_equivalence_small(s):
    for g in connected_graphs(4):
        gadget = nk_to_csg(g, s).graph
        ref = solve_grundy(NodeKayles, g)
        solver = Solver(csg(*s), gadget, cap=None)
        assert solver.grundy(gadget.full) == ref.grundy


# -- Node-Kayles -> ND Node-Kayles -------------------------------------------------

def test_ndnk_gadget_sizes():
    assert ndnk_gadget(generators.path(2)).graph.n == 10
    assert ndnk_gadget(generators.path(3)).graph.n == 19


def test_ndnk_gadget_needs_an_edge():
    with pytest.raises(GraphError):
        ndnk_gadget(Graph.empty(1))


def test_ndnk_gadget_on_p3_and_triangle():
    for g in (generators.path(3), generators.complete(3), generators.star(3)):
        h = ndnk_gadget(g).graph
        assert outcome_of(NDNodeKayles, h) == outcome_of(NodeKayles, g)


def test_ndnk_gadget_fails_on_k2():
    # the lone-edge case has no faithful gadget of this shape
    h = ndnk_gadget(generators.path(2)).graph
    assert outcome_of(NDNodeKayles, h) != outcome_of(NodeKayles, generators.path(2))


# -- Avoid True -> CSG(k) on split graphs ------------------------------------------

def test_split_gadget_single_variable():
    gadget = avoidtrue_to_csgk(DNFFormula.of(1, []), 2)
    assert find_isomorphism(gadget.graph, generators.path(2)) is not None


@given(st.integers(0, 2**32 - 1), st.integers(2, 3), st.booleans())
@settings(max_examples=30)
def test_split_gadget_shape(seed, k, anchor):
    f = random_dnf(random.Random(seed))
    gadget = avoidtrue_to_csgk(f, k, anchor=anchor)
    extra = k + 2 if anchor else 0
    assert gadget.graph.n == f.variable_count * k + len(f.clauses) + extra
    assert is_split(gadget.graph, split_clique_of(gadget))


def test_split_gadget_rejects_small_k():
    with pytest.raises(GraphError):
        avoidtrue_to_csgk(DNFFormula.of(1, []), 1)


def test_is_split():
    assert is_split(generators.star(3), 1)
    assert not is_split(generators.path(4), 0b0010)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=30)
def test_anchored_split_gadget_is_equivalent(seed):
    rnd = random.Random(seed)
    f = random_dnf(rnd)
    res = check_avoid_true(f, rnd.choice([2, 3]), "case", anchor=True)
    assert res.ok, res.detail


def test_unanchored_gadget_counterexample():
    # setting x0 satisfies the formula, yet removing x0 with its leaf leaves the
    # clause vertex alone, a connected residue, so the gadget has a move
    f = DNFFormula.of(1, [{0}])
    assert avoid_true_outcome(f).outcome == Outcome.P
    assert outcome_of(csg(2), avoidtrue_to_csgk(f, 2).graph) == Outcome.N
    assert not check_avoid_true(f, 2, "plain").ok
    assert check_avoid_true(f, 2, "anchored", anchor=True).ok


# -- GI -> edge-disjoint involution -----------------------------------------------

def test_gi_gadget_sizes():
    k1 = Graph.empty(1)
    assert gi_gadget(k1, k1).graph.n == 10
    mismatch = gi_gadget(k1, generators.path(2))
    assert mismatch.info["mismatch"]
    assert find_isomorphism(mismatch.graph, generators.path(2)) is not None


@given(graphs(max_n=5), graphs(max_n=5))
@settings(max_examples=30)
def test_gi_gadget_vertex_count(g1, g2):
    h = gi_gadget(g1, g2).graph
    if g1.n == g2.n:
        want = sum(2 * g.n + 2 + g.m + 1 for g in (g1, g2))
        assert h.n == want
