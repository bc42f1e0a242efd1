"""Polynomial-time outcome algorithms for Non-Disconnecting Arc-Kayles on
trees, clique trees (block graphs) and twin-free-clique threshold graphs."""

from __future__ import annotations

import heapq
from dataclasses import dataclass

import networkx as nx

from .graph import Graph, GraphError, is_connected, is_tree, iter_bits, twin_classes
from .rulesets import NDAK, legal_moves, move_orbits
from .solver import Outcome, subtraction_heap_grundy


class NotInClass(GraphError):
    """Input is outside the graph class an algorithm requires."""


def _parity(count: int) -> Outcome:
    return Outcome.N if count % 2 else Outcome.P


def tree_moves(g: Graph, alive: int | None = None) -> int:
    """Number of moves in any complete NDAK play on the tree G[alive].

    Repeatedly removes the smallest pendant pair (edge uv with
    deg(u) + deg(v) <= 3), which is exactly the legal-move shape in a tree.
    Degrees only drop, so a pair that becomes legal stays legal until one of
    its ends disappears.
    """
    if alive is None:
        alive = g.full
    adj = g.adj
    deg = {v: (adj[v] & alive).bit_count() for v in iter_bits(alive)}
    heap = []
    for u in iter_bits(alive):
        for v in iter_bits(adj[u] & alive):
            if u < v and deg[u] + deg[v] <= 3:
                heap.append((u, v))
    heapq.heapify(heap)
    count = 0
    while heap:
        u, v = heapq.heappop(heap)
        if not (alive >> u & 1 and alive >> v & 1):
            continue
        alive &= ~((1 << u) | (1 << v))
        count += 1
        for w in iter_bits((adj[u] | adj[v]) & alive):
            deg[w] = (adj[w] & alive).bit_count()
            for x in iter_bits(adj[w] & alive):
                if deg[w] + deg[x] <= 3:
                    heapq.heappush(heap, (min(w, x), max(w, x)))
    return count


def tree_outcome(g: Graph, alive: int | None = None) -> tuple[Outcome, int]:
    if alive is None:
        alive = g.full
    if not is_tree(g, alive):
        raise NotInClass("tree_outcome requires a tree")
    count = tree_moves(g, alive)
    return _parity(count), count


def to_networkx(g: Graph, alive: int | None = None) -> nx.Graph:
    if alive is None:
        alive = g.full
    h = nx.Graph()
    h.add_nodes_from(iter_bits(alive))
    h.add_edges_from(g.edges(alive))
    return h


def is_clique_tree(g: Graph) -> bool:
    if g.n == 0 or not is_connected(g):
        return False
    h = to_networkx(g)
    for block in nx.biconnected_components(h):
        k = len(block)
        if h.subgraph(block).number_of_edges() != k * (k - 1) // 2:
            return False
    return True


def greedy_play(g: Graph, alive: int | None = None) -> int:
    """Play the smallest legal NDAK move until none is left; return count."""
    if alive is None:
        alive = g.full
    count = 0
    while True:
        moves = legal_moves(NDAK, g, alive)
        if not moves:
            return count
        alive &= ~moves[0]
        count += 1


def clique_tree_outcome(g: Graph) -> tuple[Outcome, int]:
    if not is_clique_tree(g):
        raise NotInClass("clique_tree_outcome requires every block to be a clique")
    count = greedy_play(g)
    return _parity(count), count


@dataclass
class ThresholdPartition:
    clique: int
    stable: int
    construction_word: str
    twin_free: bool

    @property
    def clique_order(self) -> int:
        return self.clique.bit_count()

    @property
    def stable_order(self) -> int:
        return self.stable.bit_count()


def threshold_partition(g: Graph) -> ThresholdPartition:
    """Split a threshold graph into a minimal clique K and maximal stable S.

    Recognition strips a vertex that is isolated or universal in what remains
    (isolated preferred, smallest index first).  Stripped-isolated vertices go
    to S, stripped-universal ones to K; then any K vertex without an S
    neighbour moves to S until nothing moves.
    """
    rest = g.full
    stripped = []
    while rest:
        pick = None
        for v in iter_bits(rest):
            if g.adj[v] & rest == 0:
                pick = (v, "i")
                break
        if pick is None:
            for v in iter_bits(rest):
                if g.adj[v] & rest == rest & ~(1 << v):
                    pick = (v, "u")
                    break
        if pick is None:
            raise NotInClass("not a threshold graph")
        stripped.append(pick)
        rest &= ~(1 << pick[0])
    clique = stable = 0
    for v, kind in stripped:
        if kind == "u":
            clique |= 1 << v
        else:
            stable |= 1 << v
    moved = True
    while moved:
        moved = False
        for v in iter_bits(clique):
            if g.adj[v] & stable == 0:
                clique &= ~(1 << v)
                stable |= 1 << v
                moved = True
                break
    twin_free = all((c & clique).bit_count() <= 1 for c in twin_classes(g))
    word = "".join(kind for _, kind in reversed(stripped))
    return ThresholdPartition(clique, stable, word, twin_free)


def _bounded_wins(g: Graph, alive: int, depth: int) -> bool:
    moves = move_orbits(NDAK, g, alive)
    if moves and depth == 0:
        raise RuntimeError("threshold small-clique search exceeded its depth bound")
    return any(not _bounded_wins(g, alive & ~m, depth - 1) for m in moves)


def threshold_outcome(g: Graph) -> Outcome:
    if not is_connected(g):
        raise NotInClass("NDAK positions must be connected")
    part = threshold_partition(g)
    if not part.twin_free:
        raise NotInClass("threshold clique has twins")
    n = part.clique_order
    if part.stable_order < n:
        raise NotInClass(f"|S| = {part.stable_order} < |K| = {n}: partition is not minimal")
    if n == 0:
        return Outcome.P
    if n == 1:
        return Outcome.N if g.n in (2, 3) else Outcome.P
    if n == 2:
        # one type-1 move leaves a star: play is at most three moves long
        return Outcome.N if _bounded_wins(g, g.full, 3) else Outcome.P
    if n == 3:
        return Outcome.N
    if n == 4:
        return Outcome.P
    return Outcome.N if subtraction_heap_grundy({1, 2}, n - 1) else Outcome.P
