"""Immutable simple graphs with positions encoded as vertex bitmasks.

A position of any game in this package is an ``int`` whose set bits are the
alive vertices of a fixed host graph.  All games only delete vertices, so the
mask alone identifies a position.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

INF = float("inf")


class GraphError(ValueError):
    """Invalid graph construction or unsupported input."""


class ParseError(GraphError):
    """Edge-list text does not follow the expected format."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class HeaderError(ParseError):
    pass


class IndexRangeError(ParseError):
    pass


class SelfLoopError(ParseError):
    pass


class DuplicateEdgeError(ParseError):
    pass


class EdgeCountError(ParseError):
    pass


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits_to_list(mask: int) -> list[int]:
    return list(iter_bits(mask))


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``adj[v]`` is the neighbourhood of ``v`` as a bitmask.  Use
    :meth:`from_edges` rather than the raw constructor.
    """

    n: int
    adj: tuple[int, ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise GraphError("adjacency length differs from vertex count")
        for v, nb in enumerate(self.adj):
            if nb >> self.n:
                raise GraphError(f"vertex {v} has neighbour out of range")
            if nb >> v & 1:
                raise GraphError(f"self-loop at {v}")
            for u in iter_bits(nb):
                if not self.adj[u] >> v & 1:
                    raise GraphError(f"asymmetric adjacency {v}-{u}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]],
                   labels: Sequence[str] | None = None) -> "Graph":
        if n < 0:
            raise GraphError("negative vertex count")
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj), tuple(labels) if labels is not None else None)

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @property
    def m(self) -> int:
        return sum(nb.bit_count() for nb in self.adj) // 2

    def neighbors(self, v: int) -> list[int]:
        return bits_to_list(self.adj[v])

    def degree(self, v: int, alive: int | None = None) -> int:
        nb = self.adj[v]
        if alive is not None:
            nb &= alive
        return nb.bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self, alive: int | None = None) -> list[tuple[int, int]]:
        if alive is None:
            alive = self.full
        out = []
        for u in iter_bits(alive):
            for v in iter_bits(self.adj[u] & alive & ~((2 << u) - 1)):
                out.append((u, v))
        return out

    def induced(self, alive: int) -> tuple["Graph", list[int]]:
        """Compact copy of ``G[alive]`` and the old index of each new vertex."""
        old = bits_to_list(alive)
        new_index = {v: i for i, v in enumerate(old)}
        edges = [(new_index[u], new_index[v]) for u, v in self.edges(alive)]
        labels = None
        if self.labels is not None:
            labels = [self.labels[v] for v in old]
        return Graph.from_edges(len(old), edges, labels), old

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


# -- edge-list text format ---------------------------------------------------

def parse_graph(text: str | bytes) -> Graph:
    """Parse the ``n m`` header + ``u v`` lines edge-list format."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    header = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    n = m = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 2:
                raise HeaderError("expected header 'n m'", lineno)
            try:
                n, m = int(parts[0]), int(parts[1])
            except ValueError:
                raise HeaderError("non-integer header", lineno) from None
            if n < 0 or m < 0:
                raise HeaderError("negative count in header", lineno)
            header = (n, m)
            continue
        if len(parts) != 2:
            raise ParseError("expected edge line 'u v'", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError("non-integer vertex index", lineno) from None
        if not (0 <= u < n and 0 <= v < n):
            raise IndexRangeError(f"vertex index out of range 0..{n - 1}", lineno)
        if u == v:
            raise SelfLoopError(f"self-loop at vertex {u}", lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise DuplicateEdgeError(f"duplicate edge {key[0]} {key[1]}", lineno)
        seen.add(key)
        edges.append(key)
    if header is None:
        raise HeaderError("missing header")
    if len(edges) != m:
        raise EdgeCountError(f"header declares {m} edges, found {len(edges)}")
    return Graph.from_edges(n, edges)


def format_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines += [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


# -- structural queries ------------------------------------------------------

def reach(g: Graph, alive: int, start: int) -> int:
    """Mask of vertices of ``alive`` reachable from ``start`` inside G[alive]."""
    seen = 1 << start
    frontier = seen
    adj = g.adj
    while frontier:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= adj[v]
        nxt &= alive & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def is_connected(g: Graph, alive: int | None = None) -> bool:
    """True iff G[alive] is connected.  The empty set counts as connected."""
    if alive is None:
        alive = g.full
    if not alive:
        return True
    return reach(g, alive, lowest(alive)) == alive


def connected_components(g: Graph, alive: int | None = None) -> list[int]:
    if alive is None:
        alive = g.full
    comps = []
    rest = alive
    while rest:
        c = reach(g, rest, lowest(rest))
        comps.append(c)
        rest &= ~c
    return comps


def feedback_edge_number(g: Graph) -> int:
    return g.m - g.n + len(connected_components(g))


def is_forest(g: Graph, alive: int | None = None) -> bool:
    if alive is None:
        alive = g.full
    m = sum((g.adj[v] & alive).bit_count() for v in iter_bits(alive)) // 2
    return m == alive.bit_count() - len(connected_components(g, alive))


def is_tree(g: Graph, alive: int | None = None) -> bool:
    if alive is None:
        alive = g.full
    return alive != 0 and is_connected(g, alive) and is_forest(g, alive)


def girth(g: Graph) -> float:
    """Length of a shortest cycle, ``INF`` for forests."""
    best = INF
    for s in range(g.n):
        dist = {s: 0}
        parent = {s: -1}
        queue = deque([s])
        while queue:
            v = queue.popleft()
            if 2 * dist[v] + 1 >= best:
                break
            for w in iter_bits(g.adj[v]):
                if w not in dist:
                    dist[w] = dist[v] + 1
                    parent[w] = v
                    queue.append(w)
                elif parent[v] != w:
                    best = min(best, dist[v] + dist[w] + 1)
    return best


def is_bipartite(g: Graph) -> bool:
    colour = [-1] * g.n
    for s in range(g.n):
        if colour[s] >= 0:
            continue
        colour[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in iter_bits(g.adj[v]):
                if colour[w] < 0:
                    colour[w] = colour[v] ^ 1
                    queue.append(w)
                elif colour[w] == colour[v]:
                    return False
    return True


def twin_classes(g: Graph, alive: int | None = None) -> list[int]:
    """Partition of ``alive`` into twin classes, ordered by smallest vertex.

    ``u`` and ``v`` are twins when N(u) - {v} == N(v) - {u} inside G[alive];
    this groups open twins by N(v) and closed twins by N[v].  A vertex cannot
    have both an open and a closed twin, so the two groupings never overlap.
    """
    if alive is None:
        alive = g.full
    by_open: dict[int, int] = {}
    by_closed: dict[int, int] = {}
    for v in iter_bits(alive):
        nb = g.adj[v] & alive
        by_open[nb] = by_open.get(nb, 0) | (1 << v)
        closed = nb | (1 << v)
        by_closed[closed] = by_closed.get(closed, 0) | (1 << v)
    cls_of: dict[int, int] = {}
    for group in list(by_open.values()) + list(by_closed.values()):
        if group.bit_count() > 1:
            for v in iter_bits(group):
                cls_of[v] = group
    classes = []
    done = 0
    for v in iter_bits(alive):
        if done >> v & 1:
            continue
        c = cls_of.get(v, 1 << v)
        classes.append(c)
        done |= c
    return classes


@dataclass
class CoreDecomposition:
    """2-core of a connected graph plus the trees hanging off it.

    ``hanging_trees`` holds ``(root, tree_mask)`` where ``root`` is the core
    vertex the tree attaches to; ``attachments`` holds the matching
    ``(root, tree_vertex)`` edges.  For a tree input the core is empty and the
    single hanging tree is the whole graph with root ``-1``.
    """

    core: int
    hanging_trees: list[tuple[int, int]]
    attachments: list[tuple[int, int]]


def peel_to_core(g: Graph, alive: int | None = None, order=None) -> int:
    """Iteratively delete degree <= 1 vertices; returns the remaining mask.

    ``order`` optionally permutes which pending vertex is deleted next, used by
    tests to check order independence.
    """
    if alive is None:
        alive = g.full
    deg = {v: (g.adj[v] & alive).bit_count() for v in iter_bits(alive)}
    pending = [v for v in deg if deg[v] <= 1]
    core = alive
    while pending:
        if order is not None:
            idx = order(len(pending))
            v = pending.pop(idx)
        else:
            v = pending.pop()
        if not core >> v & 1:
            continue
        core &= ~(1 << v)
        for w in iter_bits(g.adj[v] & core):
            deg[w] -= 1
            if deg[w] == 1:
                pending.append(w)
    return core


def two_core(g: Graph) -> CoreDecomposition:
    if not is_connected(g):
        raise GraphError("two_core requires a connected graph")
    core = peel_to_core(g)
    if core == 0:
        return CoreDecomposition(0, [(-1, g.full)], [])
    trees = []
    attach = []
    for comp in connected_components(g, g.full & ~core):
        for v in iter_bits(comp):
            hits = g.adj[v] & core
            if hits:
                r = lowest(hits)
                trees.append((r, comp))
                attach.append((r, v))
                break
    order = sorted(range(len(trees)), key=lambda i: (trees[i][0], lowest(trees[i][1])))
    return CoreDecomposition(core, [trees[i] for i in order], [attach[i] for i in order])


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for h in graphs:
        edges += [(u + offset, v + offset) for u, v in h.edges()]
        offset += h.n
    return Graph.from_edges(offset, edges)


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Graph with vertex ``v`` renamed to ``perm[v]``."""
    return Graph.from_edges(g.n, [(perm[u], perm[v]) for u, v in g.edges()])
