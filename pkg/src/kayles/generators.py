"""Graph families used as inputs and test corpora.

Every family is also reachable from a compact text spec (``path:5``,
``grid:2x3``, ``threshold:iiu`` ...) so the CLI can name it.
"""

from __future__ import annotations

import itertools
import random

from .graph import Graph, GraphError, is_connected


def path(n: int) -> Graph:
    if n < 1:
        raise GraphError("path needs n >= 1")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    if n < 1:
        raise GraphError("complete graph needs n >= 1")
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def star(q: int) -> Graph:
    """K_{1,q}; the centre is vertex 0."""
    if q < 0:
        raise GraphError("star needs q >= 0")
    return Graph.from_edges(q + 1, [(0, i) for i in range(1, q + 1)])


def spider(*legs: int) -> Graph:
    """Subdivided star: centre 0 with one path of each given length."""
    if any(l < 1 for l in legs):
        raise GraphError("spider legs must have length >= 1")
    edges = []
    n = 1
    for length in legs:
        prev = 0
        for _ in range(length):
            edges.append((prev, n))
            prev = n
            n += 1
    return Graph.from_edges(n, edges)


def grid(r: int, c: int) -> Graph:
    if r < 1 or c < 1:
        raise GraphError("grid needs positive dimensions")
    edges = []
    for i in range(r):
        for j in range(c):
            v = i * c + j
            if j + 1 < c:
                edges.append((v, v + 1))
            if i + 1 < r:
                edges.append((v, v + c))
    return Graph.from_edges(r * c, edges)


def threshold(word: str) -> Graph:
    """Threshold graph from a construction word over ``i`` (isolated) and
    ``u`` (universal); vertex k is the k-th letter."""
    word = word.replace(" ", "").replace(",", "")
    if not word or set(word) - {"i", "u"}:
        raise GraphError("threshold word must be a non-empty string over {i,u}")
    edges = []
    for k, ch in enumerate(word):
        if ch == "u":
            edges += [(j, k) for j in range(k)]
    return Graph.from_edges(len(word), edges)


def threshold_word(stable_sizes: list[int], clique_sizes: list[int] | None = None) -> str:
    """Construction word for cliques K_1..K_m and stable sets S_1..S_m where
    S_i sees K_1..K_i; built for i = m..1 by adding S_i then K_i."""
    m = len(stable_sizes)
    if clique_sizes is None:
        clique_sizes = [1] * m
    if len(clique_sizes) != m:
        raise GraphError("stable and clique size lists differ in length")
    word = ""
    for i in reversed(range(m)):
        word += "i" * stable_sizes[i] + "u" * clique_sizes[i]
    return word


def clique_tree(seed: int, block_sizes: list[int]) -> Graph:
    """Block graph: each new clique block shares one random existing vertex."""
    if not block_sizes or any(s < 1 for s in block_sizes):
        raise GraphError("block sizes must be positive")
    rng = random.Random(seed)
    first = block_sizes[0]
    edges = list(itertools.combinations(range(first), 2))
    n = first
    for size in block_sizes[1:]:
        if size < 2:
            raise GraphError("attached blocks need at least 2 vertices")
        anchor = rng.randrange(n)
        members = [anchor] + list(range(n, n + size - 1))
        edges += list(itertools.combinations(members, 2))
        n += size - 1
    return Graph.from_edges(n, edges)


def split(seed: int, clique_size: int, stable_size: int, density: float) -> Graph:
    """Clique on 0..a-1, stable vertices each joined to the clique at random
    (at least one neighbour each when the clique is non-empty)."""
    if clique_size < 0 or stable_size < 0 or not 0.0 <= density <= 1.0:
        raise GraphError("invalid split parameters")
    rng = random.Random(seed)
    edges = list(itertools.combinations(range(clique_size), 2))
    for s in range(stable_size):
        v = clique_size + s
        nbrs = [k for k in range(clique_size) if rng.random() < density]
        if clique_size and not nbrs:
            nbrs = [rng.randrange(clique_size)]
        edges += [(k, v) for k in nbrs]
    return Graph.from_edges(clique_size + stable_size, edges)


def random_connected(n: int, m: int, seed: int) -> Graph:
    """Uniform random spanning tree shape plus extra random edges."""
    if n < 1:
        raise GraphError("random_connected needs n >= 1")
    if m < n - 1 or m > n * (n - 1) // 2:
        raise GraphError(f"m={m} not realizable as a connected simple graph on {n} vertices")
    rng = random.Random(seed)
    order = list(range(n))
    rng.shuffle(order)
    edges = set()
    for i in range(1, n):
        u, v = order[i], order[rng.randrange(i)]
        edges.add((min(u, v), max(u, v)))
    missing = [e for e in itertools.combinations(range(n), 2) if e not in edges]
    rng.shuffle(missing)
    edges.update(missing[: m - (n - 1)])
    g = Graph.from_edges(n, sorted(edges))
    assert is_connected(g)
    return g


def random_with_fen(seed: int, n: int, fen: int) -> Graph:
    """Random connected core with ``fen`` extra edges, grown to ``n``
    vertices by attaching pendant vertices anywhere."""
    rng = random.Random(seed)
    lo = 3
    while lo * (lo - 1) // 2 - (lo - 1) < fen:
        lo += 1
    if n < lo:
        raise GraphError(f"n={n} too small for fen={fen}")
    c = rng.randint(lo, n)
    core = random_connected(c, c - 1 + fen, rng.randrange(2**32))
    edges = list(core.edges())
    for v in range(c, n):
        edges.append((rng.randrange(v), v))
    return Graph.from_edges(n, edges)


def pendant_theta(n: int) -> Graph:
    """Feedback edge number 2 family for n a multiple of 20.

    Vertices 0 and 1 are joined by an edge, by a bare path whose length grows
    in steps of 4, and by a caterpillar (one leaf per path vertex) taking
    the remaining vertices; vertex 0 carries one extra leaf.
    """
    if n < 20 or n % 20:
        raise GraphError("pendant_theta needs n a positive multiple of 20")
    bare = 4 * (n // 20) + 5
    legs = (n - 3 - bare) // 2
    edges = [(0, 1), (0, 2)]
    nv = 3

    def chain(length: int, leaves: bool) -> None:
        nonlocal nv
        prev = 0
        for _ in range(length):
            v = nv
            nv += 1
            edges.append((prev, v))
            prev = v
            if leaves:
                edges.append((v, nv))
                nv += 1
        edges.append((prev, 1))

    chain(bare, False)
    chain(legs, True)
    assert nv == n
    return Graph.from_edges(n, edges)


def _ints(text: str) -> list[int]:
    return [int(x) for x in text.replace("x", ",").split(",") if x]


def generate(spec: str, seed: int = 0) -> Graph:
    """Build a graph from a family spec string.

    Families: ``path:N``, ``cycle:N``, ``complete:N``, ``star:Q``,
    ``spider:L1,L2,..``, ``grid:RxC``, ``threshold:WORD``,
    ``clique_tree:S1,S2,..``, ``split:A,B,DENSITY``, ``random:N,M``,
    ``random_fen:N,K``, ``pendant_theta:N``.
    Randomised families take ``seed``.
    """
    name, _, arg = spec.partition(":")
    name = name.strip().lower().replace("-", "_")
    try:
        if name == "path":
            return path(int(arg))
        if name == "cycle":
            return cycle(int(arg))
        if name == "complete":
            return complete(int(arg))
        if name == "star":
            return star(int(arg))
        if name == "spider":
            return spider(*_ints(arg))
        if name == "grid":
            r, c = _ints(arg)
            return grid(r, c)
        if name == "threshold":
            return threshold(arg)
        if name == "clique_tree":
            return clique_tree(seed, _ints(arg))
        if name == "split":
            a, b, d = arg.split(",")
            return split(seed, int(a), int(b), float(d))
        if name in ("random", "random_connected"):
            n, m = _ints(arg)
            return random_connected(n, m, seed)
        if name == "random_fen":
            n, k = _ints(arg)
            return random_with_fen(seed, n, k)
        if name == "pendant_theta":
            return pendant_theta(int(arg))
    except ValueError as exc:
        if isinstance(exc, GraphError):
            raise
        raise GraphError(f"bad parameters in family spec {spec!r}") from exc
    raise GraphError(f"unknown graph family {name!r}")
