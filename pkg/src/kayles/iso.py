"""Small-graph isomorphism by backtracking with degree-based pruning."""

from __future__ import annotations

from .graph import Graph, GraphError, iter_bits

ISO_CAP = 12


def _invariant(g: Graph, v: int) -> tuple:
    return (g.degree(v), tuple(sorted(g.degree(w) for w in iter_bits(g.adj[v]))))


def find_isomorphism(g1: Graph, g2: Graph, cap: int = ISO_CAP) -> list[int] | None:
    """Return ``phi`` with ``phi[v]`` the image in ``g2`` of vertex ``v`` of
    ``g1``, or ``None`` when the graphs are not isomorphic."""
    if g1.n > cap or g2.n > cap:
        raise GraphError(f"isomorphism search capped at {cap} vertices")
    if g1.n != g2.n or g1.m != g2.m:
        return None
    inv1 = [_invariant(g1, v) for v in range(g1.n)]
    inv2 = [_invariant(g2, v) for v in range(g2.n)]
    if sorted(inv1) != sorted(inv2):
        return None
    # most constrained first: rare invariants, then high degree
    count = {}
    for x in inv1:
        count[x] = count.get(x, 0) + 1
    order = sorted(range(g1.n), key=lambda v: (count[inv1[v]], -g1.degree(v), v))
    phi = [-1] * g1.n
    used = 0

    def extend(k: int) -> bool:
        nonlocal used
        if k == g1.n:
            return True
        v = order[k]
        for w in range(g2.n):
            if used >> w & 1 or inv2[w] != inv1[v]:
                continue
            ok = True
            for u in order[:k]:
                if g1.has_edge(u, v) != g2.has_edge(phi[u], w):
                    ok = False
                    break
            if not ok:
                continue
            phi[v] = w
            used |= 1 << w
            if extend(k + 1):
                return True
            used &= ~(1 << w)
            phi[v] = -1
        return False

    return list(phi) if extend(0) else None


def is_isomorphism(g1: Graph, g2: Graph, phi: list[int]) -> bool:
    if g1.n != g2.n or sorted(phi) != list(range(g2.n)):
        return False
    return all(g1.has_edge(u, v) == g2.has_edge(phi[u], phi[v])
               for u in range(g1.n) for v in range(u + 1, g1.n))


def wl_hash(g: Graph, rounds: int = 3) -> tuple:
    """Colour-refinement fingerprint; equal for isomorphic graphs."""
    colour = [g.degree(v) for v in range(g.n)]
    for _ in range(rounds):
        sig = [(colour[v], tuple(sorted(colour[w] for w in iter_bits(g.adj[v]))))
               for v in range(g.n)]
        palette = {s: i for i, s in enumerate(sorted(set(sig)))}
        colour = [palette[s] for s in sig]
    return (g.n, g.m, tuple(sorted(colour)))


class IsoBucket:
    """Accumulates graphs, keeping one representative per isomorphism class."""

    def __init__(self):
        self._buckets: dict[tuple, list[Graph]] = {}
        self.graphs: list[Graph] = []

    def add(self, g: Graph) -> bool:
        key = wl_hash(g)
        bucket = self._buckets.setdefault(key, [])
        for h in bucket:
            if find_isomorphism(g, h, cap=max(ISO_CAP, g.n)) is not None:
                return False
        bucket.append(g)
        self.graphs.append(g)
        return True
