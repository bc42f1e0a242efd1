import itertools
import random

import networkx as nx
import pytest
from hypothesis import given
import hypothesis.strategies as st

from kayles import generators
from kayles.graph import Graph, is_connected, iter_bits, mask_of
from kayles.rulesets import (NDAK, ArcKayles, IllegalMoveError, NDNodeKayles, NodeKayles,
                             Ruleset, apply_move, check_move, connected_subsets, csg,
                             legal_moves, move_orbits, parse_ruleset)
from kayles.solver import Solver

from conftest import connected_graphs

RULESETS = [ArcKayles, NodeKayles, NDNodeKayles, NDAK, csg(1), csg(3), csg(2, 3)]


def brute_moves(rs, g, alive):
    """Move sets straight from the definitions."""
    verts = list(iter_bits(alive))
    out = set()
    if rs == ArcKayles:
        return {mask_of(e) for e in g.edges(alive)}
    if rs in (NodeKayles, NDNodeKayles):
        for v in verts:
            removed = (g.adj[v] | 1 << v) & alive
            if rs == NDNodeKayles and not is_connected(g, alive & ~removed):
                continue
            out.add(removed)
        return out
    for k in rs.subtraction:
        for w in itertools.combinations(verts, k):
            w = mask_of(w)
            if is_connected(g, w) and is_connected(g, alive & ~w):
                out.add(w)
    return out


def test_ndak_on_p4():
    p4 = generators.path(4)
    assert legal_moves(NDAK, p4, p4.full) == [0b0011, 0b1100]


def test_arc_kayles_on_claw():
    claw = generators.star(3)
    assert len(legal_moves(ArcKayles, claw, claw.full)) == 3
    assert legal_moves(NDAK, claw, claw.full) == []


def test_apply_move_examples():
    p4 = generators.path(4)
    assert apply_move(NDAK, p4, p4.full, 0b0011) == 0b1100
    with pytest.raises(IllegalMoveError, match="no vertex"):
        apply_move(NDAK, p4, p4.full, 0)
    with pytest.raises(IllegalMoveError, match="residue disconnected"):
        apply_move(NDAK, p4, p4.full, 0b0110)


def test_check_move_diagnostics():
    p4 = generators.path(4)
    with pytest.raises(IllegalMoveError, match="not alive"):
        check_move(ArcKayles, p4, 0b0011, 0b0110)
    with pytest.raises(IllegalMoveError, match="adjacent"):
        check_move(ArcKayles, p4, p4.full, 0b0101)
    with pytest.raises(IllegalMoveError, match="closed neighbourhood"):
        check_move(NodeKayles, p4, p4.full, 0b0001)
    with pytest.raises(IllegalMoveError, match="not in"):
        check_move(csg(2), p4, p4.full, 0b0111)
    with pytest.raises(IllegalMoveError, match="connected subgraph"):
        check_move(csg(2), p4, p4.full, 0b1001)


def test_orbit_examples():
    k15 = generators.star(5)
    assert move_orbits(NDAK, k15, k15.full) == []
    k4 = generators.complete(4)
    assert len(legal_moves(ArcKayles, k4, k4.full)) == 6
    assert len(move_orbits(ArcKayles, k4, k4.full)) == 1


def test_parse_ruleset():
    assert parse_ruleset("arc-kayles") == ArcKayles
    assert parse_ruleset("csg:2") == NDAK
    assert parse_ruleset("NDAK") == NDAK
    assert parse_ruleset("csg:2,3").subtraction == frozenset({2, 3})
    for bad in ("csg:", "csg:a", "chess"):
        with pytest.raises(ValueError):
            parse_ruleset(bad)


def test_ruleset_validation():
    with pytest.raises(ValueError):
        Ruleset("csg", frozenset({0}))
    with pytest.raises(ValueError):
        Ruleset("arc-kayles", frozenset({2}))


@pytest.mark.parametrize("rs", RULESETS, ids=str)
@given(connected_graphs(max_n=7, max_extra=5), st.integers(0, 2**7 - 1))
def test_moves_match_definition(rs, g, raw):
    alive = raw & g.full
    if not rs.disconnecting and not is_connected(g, alive):
        alive = g.full
    moves = legal_moves(rs, g, alive)
    assert len(moves) == len(set(moves))
    assert set(moves) == brute_moves(rs, g, alive)
    assert moves == sorted(moves, key=lambda m: sorted(iter_bits(m)))


@given(connected_graphs(max_n=8), st.integers(1, 4))
def test_connected_subsets_exactly_once(g, k):
    got = list(connected_subsets(g, g.full, k))
    assert len(got) == len(set(got))
    want = {mask_of(w) for w in itertools.combinations(range(g.n), k) if is_connected(g, mask_of(w))}
    assert set(got) == want


@given(connected_graphs(max_n=8, max_extra=6))
def test_ndak_moves_subset_of_arc_kayles(g):
    assert set(legal_moves(NDAK, g, g.full)) <= set(legal_moves(ArcKayles, g, g.full))


@pytest.mark.parametrize("rs", [NDNodeKayles, NDAK, csg(2, 3)], ids=str)
@given(connected_graphs(max_n=9, max_extra=5), st.integers(0, 2**32 - 1))
def test_nd_playouts_stay_connected(rs, g, seed):
    rnd = random.Random(seed)
    alive = g.full
    while True:
        assert is_connected(g, alive)
        moves = legal_moves(rs, g, alive)
        if not moves:
            break
        alive = apply_move(rs, g, alive, rnd.choice(moves))


@given(connected_graphs(max_n=9, max_extra=5), st.integers(0, 2**32 - 1))
def test_node_kayles_selections_independent(g, seed):
    rnd = random.Random(seed)
    alive, selected = g.full, []
    while True:
        moves = legal_moves(NodeKayles, g, alive)
        if not moves:
            break
        m = rnd.choice(moves)
        centre = next(v for v in iter_bits(m) if (g.adj[v] | 1 << v) & alive == m)
        selected.append(centre)
        alive &= ~m
    for u, v in itertools.combinations(selected, 2):
        assert not g.has_edge(u, v)


def _atlas(max_n):
    for h in nx.graph_atlas_g()[1:]:
        if h.number_of_nodes() <= max_n and nx.is_connected(h):
            yield Graph.from_edges(h.number_of_nodes(), list(h.edges()))


@pytest.mark.parametrize("rs", [ArcKayles, NodeKayles, NDAK], ids=str)
def test_orbit_pruning_is_sound(rs):
    for g in _atlas(7):
        a = Solver(rs, g, use_orbits=True)
        b = Solver(rs, g, use_orbits=False)
        assert a.wins(g.full) == b.wins(g.full)
        assert a.grundy(g.full) == b.grundy(g.full)


@given(connected_graphs(max_n=7, max_extra=5))
def test_orbits_are_legal_and_cover_classes(g):
    moves = legal_moves(ArcKayles, g, g.full)
    orbits = move_orbits(ArcKayles, g, g.full, moves)
    assert set(orbits) <= set(moves)
    assert bool(orbits) == bool(moves)
