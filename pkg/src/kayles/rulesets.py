"""Move generation for the vertex-deletion games.

A move is the bitmask of vertices it deletes.  Move lists are sorted in
subset-lexicographic order (compare the ascending vertex lists).
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, bits_to_list, is_connected, iter_bits, twin_classes

ARC_KAYLES = "arc-kayles"
NODE_KAYLES = "node-kayles"
ND_NODE_KAYLES = "nd-node-kayles"
CSG = "csg"


class IllegalMoveError(ValueError):
    pass


@dataclass(frozen=True)
class Ruleset:
    kind: str
    subtraction: frozenset[int] = frozenset()

    def __post_init__(self):
        if self.kind not in (ARC_KAYLES, NODE_KAYLES, ND_NODE_KAYLES, CSG):
            raise ValueError(f"unknown ruleset kind {self.kind!r}")
        if self.kind == CSG:
            if not self.subtraction or min(self.subtraction) < 1:
                raise ValueError("CSG needs a non-empty set of positive integers")
        elif self.subtraction:
            raise ValueError(f"{self.kind} takes no subtraction set")

    @property
    def disconnecting(self) -> bool:
        """Positions may split into components (disjunctive sums)."""
        return self.kind in (ARC_KAYLES, NODE_KAYLES)

    @property
    def name(self) -> str:
        if self.kind == CSG:
            return "csg:" + ",".join(str(k) for k in sorted(self.subtraction))
        return self.kind

    def __str__(self) -> str:
        return self.name


def csg(*sizes: int) -> Ruleset:
    return Ruleset(CSG, frozenset(sizes))


ArcKayles = Ruleset(ARC_KAYLES)
NodeKayles = Ruleset(NODE_KAYLES)
NDNodeKayles = Ruleset(ND_NODE_KAYLES)
NDAK = csg(2)


def parse_ruleset(text: str) -> Ruleset:
    t = text.strip().lower()
    if t in (ARC_KAYLES, NODE_KAYLES, ND_NODE_KAYLES):
        return Ruleset(t)
    if t in ("ndak", "nd-arc-kayles"):
        return NDAK
    if t.startswith("csg:"):
        try:
            sizes = frozenset(int(x) for x in t[4:].split(",") if x)
        except ValueError:
            raise ValueError(f"bad subtraction set in {text!r}") from None
        return Ruleset(CSG, sizes)
    raise ValueError(f"unknown ruleset {text!r}")


def _order(moves) -> list[int]:
    return sorted(moves, key=bits_to_list)


def connected_subsets(g: Graph, alive: int, k: int):
    """Yield every connected k-subset of ``alive`` exactly once.

    Sets grow from their minimum vertex (the anchor); a vertex joins the
    extension set only if it is an exclusive neighbour of the newest member.
    """
    adj = g.adj
    if k <= 0:
        return
    for anchor in iter_bits(alive):
        above = alive & ~((2 << anchor) - 1)
        if k == 1:
            yield 1 << anchor
            continue
        stack = [(1 << anchor, adj[anchor] & above, adj[anchor] | (1 << anchor))]
        while stack:
            sub, ext, closed = stack.pop()
            while ext:
                low = ext & -ext
                ext ^= low
                w = low.bit_length() - 1
                new_sub = sub | low
                if new_sub.bit_count() == k:
                    yield new_sub
                    continue
                new_ext = ext | (adj[w] & above & ~closed)
                stack.append((new_sub, new_ext, closed | adj[w] | low))


def legal_moves(rs: Ruleset, g: Graph, alive: int) -> list[int]:
    adj = g.adj
    if rs.kind == ARC_KAYLES:
        return [(1 << u) | (1 << v)
                for u in iter_bits(alive)
                for v in iter_bits(adj[u] & alive & ~((2 << u) - 1))]
    if rs.kind in (NODE_KAYLES, ND_NODE_KAYLES):
        moves = set()
        for v in iter_bits(alive):
            removed = (adj[v] | (1 << v)) & alive
            if rs.kind == ND_NODE_KAYLES and not is_connected(g, alive & ~removed):
                continue
            moves.add(removed)
        return _order(moves)
    moves = set()
    for k in sorted(rs.subtraction):
        if k > alive.bit_count():
            continue
        for w in connected_subsets(g, alive, k):
            if is_connected(g, alive & ~w):
                moves.add(w)
    return _order(moves)


def check_move(rs: Ruleset, g: Graph, alive: int, removed: int) -> None:
    """Raise :class:`IllegalMoveError` naming the violated legality clause."""
    if removed == 0:
        raise IllegalMoveError("move removes no vertex")
    if removed & ~alive:
        raise IllegalMoveError("move removes vertices that are not alive")
    rest = alive & ~removed
    if rs.kind == ARC_KAYLES:
        vs = bits_to_list(removed)
        if len(vs) != 2 or not g.has_edge(*vs):
            raise IllegalMoveError("arc-kayles move must remove two adjacent vertices")
        return
    if rs.kind in (NODE_KAYLES, ND_NODE_KAYLES):
        if not any((g.adj[v] | (1 << v)) & alive == removed for v in iter_bits(removed)):
            raise IllegalMoveError("removed set is not a closed neighbourhood N[v]")
        if rs.kind == ND_NODE_KAYLES and not is_connected(g, rest):
            raise IllegalMoveError("residue disconnected")
        return
    if removed.bit_count() not in rs.subtraction:
        raise IllegalMoveError(f"removed {removed.bit_count()} vertices, not in {sorted(rs.subtraction)}")
    if not is_connected(g, removed):
        raise IllegalMoveError("removed set does not induce a connected subgraph")
    if not is_connected(g, rest):
        raise IllegalMoveError("residue disconnected")


def apply_move(rs: Ruleset, g: Graph, alive: int, removed: int) -> int:
    check_move(rs, g, alive, removed)
    return alive & ~removed


def move_orbits(rs: Ruleset, g: Graph, alive: int, moves: list[int] | None = None) -> list[int]:
    """One representative (the smallest) per class of moves that differ only
    by swapping twins of G[alive]."""
    if moves is None:
        moves = legal_moves(rs, g, alive)
    if len(moves) <= 1:
        return list(moves)
    cls_index = {}
    for i, c in enumerate(twin_classes(g, alive)):
        for v in iter_bits(c):
            cls_index[v] = i
    seen = set()
    out = []
    for m in moves:
        key = tuple(sorted(cls_index[v] for v in iter_bits(m)))
        if key not in seen:
            seen.add(key)
            out.append(m)
    return out
