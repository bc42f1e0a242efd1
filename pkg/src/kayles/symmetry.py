"""Edge-disjoint involutive automorphisms and the mirror strategy they give
the second player in Arc-Kayles."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .graph import Graph, GraphError, iter_bits
from .rulesets import ArcKayles, IllegalMoveError, Ruleset, check_move, legal_moves
from .solver import CapExceeded, Outcome, outcome_of

SYMMETRY_CAP = 24


class InvalidInvolution(GraphError):
    pass


@dataclass(frozen=True)
class Involution:
    mapping: tuple[int, ...]

    def __call__(self, v: int) -> int:
        return self.mapping[v]

    def image(self, mask: int) -> int:
        out = 0
        for v in iter_bits(mask):
            out |= 1 << self.mapping[v]
        return out

    def pairs(self) -> list[tuple[int, int]]:
        return [(u, w) for u, w in enumerate(self.mapping) if u <= w]

    def certificate(self) -> str:
        return "".join(f"{u} <-> {w}\n" for u, w in enumerate(self.mapping))


def involution_problems(g: Graph, f: Involution) -> list[str]:
    """Every violated condition; empty iff ``f`` is an edge-disjoint
    involutive automorphism of ``g``."""
    m = f.mapping
    if len(m) != g.n or sorted(m) != list(range(g.n)):
        return ["mapping is not a permutation of the vertices"]
    out = []
    for v in range(g.n):
        if m[m[v]] != v:
            out.append(f"f(f({v})) != {v}")
    for u, v in g.edges():
        if not g.has_edge(m[u], m[v]):
            out.append(f"edge {u}-{v} maps to non-edge {m[u]}-{m[v]}")
        if {u, v} & {m[u], m[v]}:
            out.append(f"edge {u}-{v} meets its image {m[u]}-{m[v]}")
    if g.m != sum(1 for u, v in g.edges() if g.has_edge(m[u], m[v])):
        out.append("not adjacency preserving")
    return out


def is_edge_disjoint_involution(g: Graph, f: Involution) -> bool:
    return not involution_problems(g, f)


def stable_colouring(g: Graph) -> list[int]:
    """Colour refinement to a fixpoint; automorphisms preserve the colours."""
    colour = [g.degree(v) for v in range(g.n)]
    classes = len(set(colour))
    while True:
        sig = [(colour[v], tuple(sorted(colour[w] for w in iter_bits(g.adj[v]))))
               for v in range(g.n)]
        palette = {s: i for i, s in enumerate(sorted(set(sig)))}
        colour = [palette[s] for s in sig]
        if len(palette) == classes:
            return colour
        classes = len(palette)


def _search_order(g: Graph, colour: list[int]) -> list[int]:
    # rarest colour first, then grow along edges so images stay constrained
    size = {}
    for c in colour:
        size[c] = size.get(c, 0) + 1
    key = lambda v: (size[colour[v]], -g.degree(v), v)
    order, placed = [], 0
    remaining = set(range(g.n))
    while remaining:
        frontier = [v for v in remaining if g.adj[v] & placed]
        v = min(frontier or remaining, key=key)
        order.append(v)
        placed |= 1 << v
        remaining.discard(v)
    return order


def find_edge_disjoint_involution(g: Graph, cap: int = SYMMETRY_CAP) -> Involution | None:
    if g.n > cap:
        raise CapExceeded(f"involution search capped at {cap} vertices (graph has {g.n})")
    colour = stable_colouring(g)
    order = _search_order(g, colour)
    f = [-1] * g.n
    for v in range(g.n):
        if g.adj[v] == 0:
            f[v] = v

    def consistent(v: int, w: int) -> bool:
        # f(v) = w and f(w) = v against every vertex already mapped
        for x in range(g.n):
            y = f[x]
            if y < 0:
                continue
            if g.has_edge(v, x) != g.has_edge(w, y) or g.has_edge(w, x) != g.has_edge(v, y):
                return False
        return g.has_edge(v, w) == g.has_edge(w, v)

    def extend(k: int) -> bool:
        while k < len(order) and f[order[k]] >= 0:
            k += 1
        if k == len(order):
            return True
        v = order[k]
        closed = g.adj[v] | (1 << v)
        for w in range(g.n):
            if f[w] >= 0 or closed >> w & 1 or colour[w] != colour[v]:
                continue
            if not consistent(v, w):
                continue
            f[v], f[w] = w, v
            if extend(k + 1):
                return True
            f[v] = f[w] = -1
        return False

    if not extend(0):
        return None
    inv = Involution(tuple(f))
    assert is_edge_disjoint_involution(g, inv)
    return inv


@dataclass
class StrategyCheck:
    ok: bool
    lines_played: int
    exhaustive: bool
    failure: str | None = None
    outcome: Outcome | None = None
    certificate: str = ""
    notes: list[str] = field(default_factory=list)


def verify_symmetry_strategy(g: Graph, f: Involution, rs: Ruleset = ArcKayles, *,
                             exhaustive_cap: int = 12, random_lines: int = 200,
                             seed: int = 0, outcome_cap: int = 10) -> StrategyCheck:
    """Play lines where the second player answers every move e with f(e).

    All first-player choices are explored when ``g`` is small enough,
    otherwise ``random_lines`` seeded random lines.  The check fails as soon
    as a mirrored answer is illegal.
    """
    problems = involution_problems(g, f)
    if problems:
        raise InvalidInvolution("; ".join(problems))
    result = StrategyCheck(True, 0, g.n <= exhaustive_cap, certificate=f.certificate())

    def answer(alive: int, move: int) -> int | None:
        after = alive & ~move
        reply = f.image(move)
        try:
            check_move(rs, g, after, reply)
        except IllegalMoveError as err:
            result.ok = False
            result.failure = (f"answer {sorted(iter_bits(reply))} to "
                              f"{sorted(iter_bits(move))} is illegal: {err}")
            return None
        return after & ~reply

    if result.exhaustive:
        seen = set()
        stack = [g.full]
        while stack and result.ok:
            alive = stack.pop()
            if alive in seen:
                continue
            seen.add(alive)
            moves = legal_moves(rs, g, alive)
            if not moves:
                result.lines_played += 1
            for m in moves:
                nxt = answer(alive, m)
                if nxt is None:
                    break
                stack.append(nxt)
    else:
        rng = random.Random(seed)
        for _ in range(random_lines):
            alive = g.full
            while result.ok:
                moves = legal_moves(rs, g, alive)
                if not moves:
                    break
                nxt = answer(alive, rng.choice(moves))
                if nxt is None:
                    break
                alive = nxt
            if not result.ok:
                break
            result.lines_played += 1
    if g.n <= outcome_cap:
        result.outcome = outcome_of(rs, g)
        if result.ok and result.outcome != Outcome.P:
            result.ok = False
            result.failure = f"mirror strategy held but outcome is {result.outcome}"
    return result
