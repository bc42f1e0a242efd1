"""Kernelization of Non-Disconnecting Arc-Kayles by feedback edge number.

Four outcome-preserving rules shrink the graph to a size bounded by a
function of fen alone:

1. keep at most three leaves per vertex;
2. delete legal moves inside hanging trees two at a time;
3. replace each hanging forest by a small catalog tree of equal signature;
4. replace long decorated core paths by short ones of equal extended
   outcome, drawn from a precomputed catalog.
"""

from __future__ import annotations

import hashlib
import heapq
import itertools
import json
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

from .graph import (Graph, GraphError, feedback_edge_number, is_connected, is_tree,
                    iter_bits, peel_to_core)
from .rulesets import NDAK
from .solver import VERTEX_CAP, Outcome, outcome_of
from .tractable import tree_moves

DISCONNECTED = "X"
CATALOG_VERSION = 1
DEFAULT_L_MAX = 12
CATALOG_PATH = Path(__file__).with_name("data") / f"path_catalog_v{CATALOG_VERSION}.json"

TYPE0, TYPE1, TYPEM, TYPEB1, TYPEB2 = "type0", "type1", "typeM", "typeB1", "typeB2"


# -- instances -----------------------------------------------------------------

@dataclass
class RuleRecord:
    rule: str
    vertices_before: int
    vertices_after: int
    detail: str = ""

    @property
    def delta(self) -> int:
        return self.vertices_after - self.vertices_before


@dataclass
class KernelInstance:
    graph: Graph
    to_move_parity: int = 0
    trace: list[RuleRecord] = field(default_factory=list)
    outcome: Outcome | None = None

    def with_graph(self, g: Graph, rule: str, detail: str = "") -> "KernelInstance":
        rec = RuleRecord(rule, self.graph.n, g.n, detail)
        return KernelInstance(g, self.to_move_parity, self.trace + [rec], self.outcome)


def _rebuild(g: Graph, keep: int, new_count: int = 0,
             new_edges: list[tuple[int, int]] = ()) -> tuple[Graph, dict[int, int]]:
    """Induced subgraph on ``keep`` plus ``new_count`` fresh vertices.

    Edge endpoints in ``new_edges`` are old indices (>= 0) or fresh vertices
    written as ``-1 - i``.
    """
    sub, old = g.induced(keep)
    index = {v: i for i, v in enumerate(old)}

    def at(x: int) -> int:
        return index[x] if x >= 0 else sub.n + (-1 - x)

    edges = sub.edges() + [(at(x), at(y)) for x, y in new_edges]
    return Graph.from_edges(sub.n + new_count, edges), index


# -- hanging structure -----------------------------------------------------------

def hanging_forests(g: Graph, core: int) -> dict[int, int]:
    """Map each core vertex to the mask of non-core vertices hanging on it."""
    out = {}
    rest = g.full & ~core
    for u in iter_bits(core):
        seen = 0
        frontier = g.adj[u] & rest
        while frontier:
            seen |= frontier
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= g.adj[v]
            frontier = nxt & rest & ~seen
        out[u] = seen
    return out


def pendant_moves(g: Graph, alive: int, allowed: int) -> list[tuple[int, int]]:
    """Edges xy inside ``allowed`` that are legal NDAK moves because one end
    is a leaf of G[alive] and the other has degree at most two."""
    out = []
    for x in iter_bits(allowed & alive):
        dx = (g.adj[x] & alive).bit_count()
        for y in iter_bits(g.adj[x] & allowed & alive):
            if x < y and dx + (g.adj[y] & alive).bit_count() <= 3:
                out.append((x, y))
    return out


def pendant_sequence(g: Graph, alive: int, allowed: int) -> list[tuple[int, int]]:
    """Greedy play of pendant moves inside ``allowed`` (smallest pair first)
    until none is left; the number of moves does not depend on the order."""
    heap = pendant_moves(g, alive, allowed)
    heapq.heapify(heap)
    seq = []
    while heap:
        x, y = heapq.heappop(heap)
        if not (alive >> x & 1 and alive >> y & 1):
            continue
        if (g.adj[x] & alive).bit_count() + (g.adj[y] & alive).bit_count() > 3:
            continue
        seq.append((x, y))
        alive &= ~((1 << x) | (1 << y))
        near = (g.adj[x] | g.adj[y]) & alive
        for w in iter_bits(near):
            if not allowed >> w & 1:
                continue
            for z in iter_bits(g.adj[w] & alive & allowed):
                heapq.heappush(heap, (min(w, z), max(w, z)))
    return seq


# -- rule 1 ---------------------------------------------------------------------

def rule1_trim_leaves(inst: KernelInstance) -> KernelInstance:
    g = inst.graph
    drop = 0
    for v in range(g.n):
        leaves = [w for w in iter_bits(g.adj[v]) if g.degree(w) == 1 and g.degree(v) > 1]
        for w in leaves[3:]:
            drop |= 1 << w
    if not drop:
        return inst
    new, _ = _rebuild(g, g.full & ~drop)
    return inst.with_graph(new, "rule1", f"removed {drop.bit_count()} surplus leaves")


# -- rule 2 ---------------------------------------------------------------------

def rule2_pair_tree_moves(inst: KernelInstance) -> KernelInstance:
    """Delete two moves at a time from the forest hanging on one core vertex,
    as long as that forest keeps at least one move afterwards.

    While a move remains, the forest has two or more vertices and its root
    cannot leave the graph, so the deleted moves are pure tempo.  Pairs taken
    across different roots, or pairs that empty a forest of moves, can flip
    the outcome.
    """
    g = inst.graph
    core = peel_to_core(g)
    if not core:
        raise GraphError("rule 2 needs a graph with a cycle; solve trees directly")
    drop = 0
    used = 0
    for forest in hanging_forests(g, core).values():
        seq = pendant_sequence(g, g.full, forest)
        k = len(seq) - 2 * ((len(seq) - 1) // 2) if seq else 0
        for x, y in seq[:len(seq) - k]:
            drop |= (1 << x) | (1 << y)
        used += len(seq) - k
    if used == 0:
        return inst
    new, _ = _rebuild(g, g.full & ~drop)
    assert drop.bit_count() % 4 == 0
    return inst.with_graph(new, "rule2", f"stripped {used} tree moves")


# -- rooted trees ----------------------------------------------------------------

def ahu_code(g: Graph, root: int, alive: int | None = None) -> str:
    """Canonical string of the tree G[alive] rooted at ``root``."""
    if alive is None:
        alive = g.full

    def enc(v: int, parent: int) -> str:
        kids = sorted(enc(w, v) for w in iter_bits(g.adj[v] & alive) if w != parent)
        return "(" + "".join(kids) + ")"

    return enc(root, -1)


def parse_ahu(code: str) -> tuple[int, list[tuple[int, int]]]:
    """Vertex count and edges of the rooted tree (root 0) with this code."""
    edges, stack, n = [], [], 0
    for ch in code:
        if ch == "(":
            if stack:
                edges.append((stack[-1], n))
            stack.append(n)
            n += 1
        elif ch == ")":
            stack.pop()
        else:
            raise ValueError(f"bad rooted-tree code {code!r}")
    if stack or n == 0:
        raise ValueError(f"bad rooted-tree code {code!r}")
    return n, edges


def tree_from_code(code: str) -> Graph:
    n, edges = parse_ahu(code)
    return Graph.from_edges(n, edges)


@dataclass(frozen=True)
class TreeSignature:
    o_with_root: Outcome
    root_removed: Outcome | str

    def __str__(self) -> str:
        return f"({self.o_with_root}, {self.root_removed})"


def _tree_parity(g: Graph, alive: int) -> Outcome:
    return Outcome.N if tree_moves(g, alive) % 2 else Outcome.P


def tree_signature(g: Graph, mask: int, root: int) -> TreeSignature:
    if not mask >> root & 1 or not is_tree(g, mask):
        raise GraphError("tree_signature needs a tree containing the root")
    rest = mask & ~(1 << root)
    if rest and not is_connected(g, rest):
        removed: Outcome | str = DISCONNECTED
    else:
        removed = _tree_parity(g, rest)
    return TreeSignature(_tree_parity(g, mask), removed)


def _stalk(length: int) -> str:
    # root, then a path of ``length`` vertices ending in a vertex with two leaves
    return "(" * length + "(()())" + ")" * length


# The six small trees, rooted at the first vertex.
CATALOG_TREES: dict[str, str] = {
    "a": "(()())",
    "b": "(()()())",
    "c": _stalk(4),
    "d": _stalk(1),
    "e": _stalk(2),
    "f": _stalk(3),
}
CATALOG_SIGNATURES: dict[TreeSignature, str] = {}


def _catalog_signatures() -> dict[TreeSignature, str]:
    if not CATALOG_SIGNATURES:
        for name, code in CATALOG_TREES.items():
            t = tree_from_code(code)
            sig = tree_signature(t, t.full, 0)
            assert sig not in CATALOG_SIGNATURES, name
            CATALOG_SIGNATURES[sig] = code
    return CATALOG_SIGNATURES


def catalog_tree_for(sig: TreeSignature) -> str:
    table = _catalog_signatures()
    if sig not in table:
        raise AssertionError(f"no catalog tree realises signature {sig}")
    return table[sig]


# -- rule 3 ---------------------------------------------------------------------

def forest_profile(g: Graph, alive: int, root: int) -> str:
    """Behaviour of the tree G[alive] hanging from ``root``: its signature,
    whether the forest is empty, a single vertex or larger, its number of
    moves, and the profiles reachable by one move.  Forests with equal
    profiles are interchangeable."""
    forest = alive & ~(1 << root)
    moves = pendant_moves(g, alive, forest)
    subs = sorted({forest_profile(g, alive & ~((1 << x) | (1 << y)), root) for x, y in moves})
    sig = tree_signature(g, alive, root)
    count = len(pendant_sequence(g, alive, forest))
    return (f"{sig.o_with_root}{sig.root_removed}{min(forest.bit_count(), 2)}{count}"
            + "[" + ",".join(subs) + "]")


def _augmented(code: str, spots_for, chains) -> list[Graph]:
    n, edges = parse_ahu(code)
    out = []
    for spots in spots_for(n, edges):
        extra = list(edges)
        k = n
        for spot, length in zip(spots, chains):
            prev = spot
            for _ in range(length):
                extra.append((prev, k))
                prev = k
                k += 1
        out.append(Graph.from_edges(k, extra))
    return out


def _leaves(n: int, edges) -> list[int]:
    degree = [0] * n
    for x, y in edges:
        degree[x] += 1
        degree[y] += 1
    return [v for v in range(1, n) if degree[v] == 1]


@lru_cache(maxsize=None)
def _tempo_candidates() -> tuple[tuple[Graph, str], ...]:
    """Catalog trees carrying one or two extra moves: a two- or four-vertex
    path hung from a leaf or the root, or two-vertex paths on two spots."""
    out = []
    for code in CATALOG_TREES.values():
        singles = lambda n, e: [(v,) for v in _leaves(n, e) + [0]]
        pairs = lambda n, e: list(itertools.combinations(_leaves(n, e) + [0], 2))
        out += _augmented(code, singles, (2,))
        out += _augmented(code, singles, (4,))
        out += _augmented(code, pairs, (2, 2))
    out.sort(key=lambda h: h.n)
    return tuple((h, forest_profile(h, h.full, 0)) for h in out)


def _one_move_target(sig_after: TreeSignature) -> Graph:
    # catalog tree for the signature after the move, path on its smallest leaf
    n, edges = parse_ahu(catalog_tree_for(sig_after))
    leaf = _leaves(n, edges)[0]
    return Graph.from_edges(n + 2, edges + [(leaf, n), (n, n + 1)])


def tempo_target(g: Graph, t_mask: int, u: int) -> Graph | None:
    """Smallest small tree with the same profile as the one- or two-move
    forest hanging from ``u``; for one move the rule's own choice (a path of
    two vertices on the smallest leaf of the catalog tree) is tried first."""
    forest = t_mask & ~(1 << u)
    profile = forest_profile(g, t_mask, u)
    seq = pendant_sequence(g, t_mask, forest)
    if len(seq) == 1:
        x, y = seq[0]
        first = _one_move_target(tree_signature(g, t_mask & ~((1 << x) | (1 << y)), u))
        if forest_profile(first, first.full, 0) == profile:
            return first
    for cand, p in _tempo_candidates():
        if p == profile:
            return cand
    return None


def rule3_replace_forests(inst: KernelInstance) -> KernelInstance:
    """Swap each forest hanging on a core vertex for a catalog tree: by
    signature when it has no move, by profile when it has one or two."""
    g = inst.graph
    core = peel_to_core(g)
    if not core:
        raise GraphError("rule 3 needs a graph with a cycle")
    forests = hanging_forests(g, core)
    drop = 0
    new_count = 0
    new_edges: list[tuple[int, int]] = []
    notes = []
    for u, forest in forests.items():
        if forest.bit_count() < 2:
            continue
        t_mask = forest | (1 << u)
        moves = pendant_sequence(g, g.full, forest)
        if len(moves) == 0:
            target = tree_from_code(catalog_tree_for(tree_signature(g, t_mask, u)))
        elif len(moves) <= 2 and forest.bit_count() >= 4:
            target = tempo_target(g, t_mask, u)
            if target is None:
                continue
        else:
            continue
        if target.n > t_mask.bit_count() or ahu_code(target, 0) == ahu_code(g, u, t_mask):
            continue
        drop |= forest
        fresh = {v: -1 - (new_count + v - 1) for v in range(1, target.n)}
        fresh[0] = u
        new_edges += [(fresh[x], fresh[y]) for x, y in target.edges()]
        new_count += target.n - 1
        notes.append(f"vertex {u}: {forest.bit_count()} -> {target.n - 1}")
    if not drop:
        return inst
    new, _ = _rebuild(g, g.full & ~drop, new_count, new_edges)
    return inst.with_graph(new, "rule3", "; ".join(notes))


# -- vertex types -----------------------------------------------------------------

def vertex_types(g: Graph) -> dict[int, str]:
    core = peel_to_core(g)
    out = {}
    for u, forest in hanging_forests(g, core).items():
        size = forest.bit_count()
        if size == 0:
            out[u] = TYPE0
        elif size == 1:
            out[u] = TYPE1
        elif pendant_sequence(g, g.full, forest):
            out[u] = TYPEM
        elif ahu_code(g, u, forest | (1 << u)) == CATALOG_TREES["b"]:
            out[u] = TYPEB1
        else:
            out[u] = TYPEB2
    return out


# -- extended outcomes of decorated paths -------------------------------------------

LEAF_CODE = "(())"
BARE_CODE = "()"
# every rooted tree on at most four vertices, plus three leaves
PROBES = ("()", "(())", "(()())", "((()))", "(()()())", "((())())", "(((())))",
          "((()()))")


def _path_graph(codes: tuple[str, ...], left: str | None, right: str | None):
    """Tree made of the decorated path, optionally with rooted trees hung
    before the first and after the last path vertex.  Returns the graph and
    the roots of the two end trees (or -1)."""
    edges: list[tuple[int, int]] = []
    n = 0

    def place(code: str) -> int:
        nonlocal n
        k, es = parse_ahu(code)
        edges.extend((x + n, y + n) for x, y in es)
        n += k
        return n - k

    lroot = place(left) if left is not None else -1
    prev = lroot
    for code in codes:
        v = place(code)
        if prev >= 0:
            edges.append((prev, v))
        prev = v
    rroot = -1
    if right is not None:
        rroot = place(right)
        if prev >= 0:
            edges.append((prev, rroot))
    return Graph.from_edges(n, edges), lroot, rroot


@lru_cache(maxsize=None)
def piece_key(codes: tuple[str, ...]) -> str:
    """Canonical form of the decorated path hung from a root adjacent to its
    first vertex, after deleting pendant moves two at a time while at least
    two remain.  Pieces with equal keys are interchangeable."""
    g, root, _ = _path_graph(codes, "()", None)
    return normal_piece(g, root, g.full)


def normal_piece(g: Graph, root: int, alive: int) -> str:
    """Key of the tree G[alive] hanging from ``root``: the stripping of
    rule 2, then the profile when rule 3 would apply, else the exact shape."""
    allowed = alive & ~(1 << root)
    seq = pendant_sequence(g, alive, allowed)
    for x, y in seq[:2 * ((len(seq) - 1) // 2)]:
        alive &= ~((1 << x) | (1 << y))
    forest = alive & ~(1 << root)
    size = forest.bit_count()
    count = len(seq) - 2 * ((len(seq) - 1) // 2) if seq else 0
    if (count == 0 and size >= 2) or size >= 4:
        return "p:" + forest_profile(g, alive, root)
    return ahu_code(g, root, alive)


@lru_cache(maxsize=None)
def _probe_parity(codes: tuple[str, ...], left: str, right: str) -> int:
    g, _, _ = _path_graph(codes, left, right)
    return tree_moves(g) % 2


def _parity(codes: tuple[str, ...]) -> int | str:
    if not codes:
        return 0
    g, _, _ = _path_graph(codes, None, None)
    return tree_moves(g) % 2


@dataclass(frozen=True)
class ExtendedOutcome:
    """Interface behaviour of a decorated core path between a and b.

    ``scenarios`` holds, for the five boundary situations (both ends alive,
    a removed, b removed, move on a and its neighbour, move on b and its
    neighbour) the canonical piece left behind, or X when the situation is
    unreachable; ``isolated`` the move parities of the path alone and of the
    path minus either end vertex; ``cuts`` the pair of pieces left by each
    legal first move inside the path; ``probes`` move parities and pieces in
    small tree contexts.
    """

    scenarios: tuple
    isolated: tuple
    cuts: frozenset
    probes: tuple

    def encode(self) -> str:
        return json.dumps([list(self.scenarios), list(self.isolated),
                           sorted(list(c) for c in self.cuts), list(self.probes)],
                          separators=(",", ":"))

    def digest(self) -> str:
        return hashlib.sha256(self.encode().encode()).hexdigest()[:32]


def _reverse(codes: tuple[str, ...]) -> tuple[str, ...]:
    return tuple(reversed(codes))


def _internal_cuts(codes: tuple[str, ...]) -> frozenset | None:
    """Piece pairs left by each legal first move inside the path, or None if
    a decoration still holds a move of its own."""
    out = set()
    for i, code in enumerate(codes):
        if code not in (BARE_CODE, LEAF_CODE):
            t = tree_from_code(code)
            if pendant_moves(t, t.full, t.full & ~1):
                return None
        # pieces keyed from the end that stays attached (a on the left, b on the right)
        if code == LEAF_CODE:
            out.add((piece_key(codes[:i]), piece_key(_reverse(codes[i + 1:]))))
        if code == BARE_CODE and i + 1 < len(codes) and codes[i + 1] == BARE_CODE:
            out.add((piece_key(codes[:i]), piece_key(_reverse(codes[i + 2:]))))
    return frozenset(out)


@lru_cache(maxsize=None)
def extended_outcome(codes: tuple[str, ...]) -> ExtendedOutcome | None:
    """Extended outcome of the path whose i-th vertex carries the rooted
    decoration ``codes[i]``; the first vertex is adjacent to a, the last to b.
    None if the path is not eligible (a decoration has a move)."""
    if not codes:
        raise ValueError("empty segment")
    cuts = _internal_cuts(codes)
    if cuts is None:
        return None
    rev = _reverse(codes)
    first_bare = codes[0] == BARE_CODE
    last_bare = codes[-1] == BARE_CODE
    scenarios = (
        len(cuts) > 0,
        piece_key(rev),
        piece_key(codes),
        piece_key(rev[:-1]) if first_bare else DISCONNECTED,
        piece_key(codes[:-1]) if last_bare else DISCONNECTED,
    )
    isolated = (
        _parity(codes),
        _parity(codes[1:]) if first_bare else DISCONNECTED,
        _parity(codes[:-1]) if last_bare else DISCONNECTED,
    )
    probes = tuple(
        [_probe_parity(codes, x, y) for x in PROBES for y in PROBES]
        + [piece_key(rev + (x,)) for x in PROBES]
        + [piece_key(codes + (x,)) for x in PROBES]
    )
    return ExtendedOutcome(scenarios, isolated, cuts, probes)


def segment_size(codes: tuple[str, ...]) -> int:
    return sum(code.count("(") for code in codes)


# -- the path catalog ----------------------------------------------------------------

ALPHABETS = {
    "type0": BARE_CODE,
    "type1": LEAF_CODE,
    "typeB1": CATALOG_TREES["b"],
}


@dataclass
class PathCatalog:
    l_max: int
    alphabet: tuple[str, ...]
    entries: dict[str, tuple[str, ...]]

    def lookup(self, codes: tuple[str, ...]) -> tuple[str, ...] | None:
        sig = extended_outcome(codes)
        if sig is None:
            return None
        return self.entries.get(sig.digest())

    def save(self, path: str | Path) -> None:
        data = {
            "version": CATALOG_VERSION,
            "l_max": self.l_max,
            "alphabet": list(self.alphabet),
            "entries": [[k, list(v)] for k, v in sorted(self.entries.items())],
        }
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        Path(path).write_text(json.dumps(data, separators=(",", ":")) + "\n")

    @classmethod
    def load(cls, path: str | Path) -> "PathCatalog":
        data = json.loads(Path(path).read_text())
        if data.get("version") != CATALOG_VERSION:
            raise ValueError(f"catalog version {data.get('version')} != {CATALOG_VERSION}")
        entries = {k: tuple(v) for k, v in data["entries"]}
        return cls(data["l_max"], tuple(data["alphabet"]), entries)


def _rep_order(codes: tuple[str, ...]) -> tuple:
    return (segment_size(codes), len(codes), codes)


def build_path_catalog(l_max: int = DEFAULT_L_MAX,
                       alphabet: tuple[str, ...] = ("type0", "type1")) -> PathCatalog:
    if l_max < 1:
        raise ValueError("l_max must be positive")
    letters = [ALPHABETS[a] for a in alphabet]
    best: dict[str, tuple[str, ...]] = {}
    for length in range(1, l_max + 1):
        for codes in itertools.product(letters, repeat=length):
            sig = extended_outcome(codes)
            if sig is None:
                continue
            key = sig.digest()
            old = best.get(key)
            if old is None or _rep_order(codes) < _rep_order(old):
                best[key] = codes
    return PathCatalog(l_max, tuple(alphabet), best)


_default_catalog: PathCatalog | None = None


def default_catalog() -> PathCatalog:
    """The shipped catalog, built and cached on first use if missing."""
    global _default_catalog
    if _default_catalog is None:
        try:
            _default_catalog = PathCatalog.load(CATALOG_PATH)
        except (OSError, ValueError):
            _default_catalog = build_path_catalog()
            try:
                _default_catalog.save(CATALOG_PATH)
            except OSError:
                pass
    return _default_catalog


# -- rule 4 ---------------------------------------------------------------------

@dataclass
class Segment:
    a: int
    b: int
    path: list[int]
    codes: tuple[str, ...]


def branch_set(g: Graph, core: int, types: dict[int, str]) -> int:
    out = 0
    for u in iter_bits(core):
        if (g.adj[u] & core).bit_count() >= 3 or types.get(u) == TYPEM:
            out |= 1 << u
    return out


def core_segments(g: Graph) -> list[Segment]:
    core = peel_to_core(g)
    types = vertex_types(g)
    forests = hanging_forests(g, core)
    s = branch_set(g, core, types)
    seen = 0
    out = []
    for a in iter_bits(s):
        for w in iter_bits(g.adj[a] & core & ~s):
            if seen >> w & 1:
                continue
            path, prev, cur = [], a, w
            while not s >> cur & 1:
                path.append(cur)
                nxt = [x for x in iter_bits(g.adj[cur] & core) if x != prev]
                prev, cur = cur, nxt[0]
            for v in path:
                seen |= 1 << v
            codes = tuple(ahu_code(g, v, forests[v] | (1 << v)) for v in path)
            out.append(Segment(a, cur, path, codes))
    return out


def rule4_replace_paths(inst: KernelInstance, catalog: PathCatalog | None = None) -> KernelInstance:
    if catalog is None:
        catalog = default_catalog()
    g = inst.graph
    drop = 0
    new_count = 0
    new_edges: list[tuple[int, int]] = []
    notes = []
    unmatched = 0
    forests = hanging_forests(g, peel_to_core(g))
    for seg in core_segments(g):
        rep = catalog.lookup(seg.codes)
        if rep is None:
            unmatched += 1
            continue
        if _rep_order(rep) >= _rep_order(seg.codes):
            continue
        for v in seg.path:
            drop |= (1 << v) | forests[v]
        prev = seg.a
        for code in rep:
            n, edges = parse_ahu(code)
            ids = [-1 - (new_count + i) for i in range(n)]
            new_count += n
            new_edges += [(ids[x], ids[y]) for x, y in edges]
            new_edges.append((prev, ids[0]))
            prev = ids[0]
        new_edges.append((prev, seg.b))
        notes.append(f"{seg.a}..{seg.b}: {segment_size(seg.codes)} -> {segment_size(rep)}")
    if not drop:
        if unmatched:
            return KernelInstance(inst.graph, inst.to_move_parity,
                                  inst.trace + [RuleRecord("rule4", g.n, g.n, f"{unmatched} unmatched")],
                                  inst.outcome)
        return inst
    new, _ = _rebuild(g, g.full & ~drop, new_count, new_edges)
    if unmatched:
        notes.append(f"{unmatched} unmatched")
    return inst.with_graph(new, "rule4", "; ".join(notes))


# -- pipeline -------------------------------------------------------------------------

@dataclass
class KernelOptions:
    rules: tuple[int, ...] = (1, 2, 3, 4)
    catalog: PathCatalog | None = None
    max_rounds: int = 100


@dataclass
class KernelReport:
    original_n: int
    original_m: int
    fen: int
    final_n: int
    final_m: int
    branch_vertices: int
    branch_bound: int
    rule_deltas: dict[str, int]
    unmatched_segments: int
    outcome: Outcome | None

    def to_dict(self) -> dict:
        return {
            "original_n": self.original_n,
            "original_m": self.original_m,
            "fen": self.fen,
            "final_n": self.final_n,
            "final_m": self.final_m,
            "branch_vertices": self.branch_vertices,
            "branch_bound": self.branch_bound,
            "rule_deltas": dict(self.rule_deltas),
            "unmatched_segments": self.unmatched_segments,
            "outcome": self.outcome.value if self.outcome else None,
        }


def branch_vertex_count(g: Graph) -> int:
    core = peel_to_core(g)
    return sum(1 for v in iter_bits(core) if (g.adj[v] & core).bit_count() >= 3)


def _graph_key(g: Graph) -> tuple:
    return (g.n, tuple(g.edges()))


def kernelize(g: Graph, options: KernelOptions | None = None) -> KernelInstance:
    if options is None:
        options = KernelOptions()
    if g.n == 0 or not is_connected(g):
        raise GraphError("kernelize needs a connected graph")
    inst = KernelInstance(g)
    if is_tree(g):
        count = tree_moves(g)
        inst = inst.with_graph(Graph.empty(0), "tree", f"{count} moves")
        inst.outcome = Outcome.N if count % 2 else Outcome.P
        return inst
    rules = {
        1: rule1_trim_leaves,
        2: rule2_pair_tree_moves,
        3: rule3_replace_forests,
        4: lambda i: rule4_replace_paths(i, options.catalog),
    }
    for _ in range(options.max_rounds):
        before = _graph_key(inst.graph)
        for r in options.rules:
            inst = rules[r](inst)
        if _graph_key(inst.graph) == before:
            break
    else:
        raise RuntimeError("kernelization did not reach a fixpoint")
    assert inst.to_move_parity == 0
    bound = 2 * feedback_edge_number(inst.graph) - 2
    if branch_vertex_count(inst.graph) > bound:
        raise AssertionError("branch-vertex bound violated")
    return inst


def kernel_report(g: Graph, inst: KernelInstance, solve: bool = True) -> KernelReport:
    deltas: dict[str, int] = {}
    unmatched = 0
    for rec in inst.trace:
        deltas[rec.rule] = deltas.get(rec.rule, 0) + rec.delta
        if rec.rule == "rule4" and "unmatched" in rec.detail:
            unmatched = int(rec.detail.split(" unmatched")[0].split()[-1])
    outcome = inst.outcome
    if outcome is None and solve and inst.graph.n <= VERTEX_CAP:
        outcome = kernel_outcome(inst)
    fen = feedback_edge_number(g)
    k = inst.graph
    return KernelReport(g.n, g.m, fen, k.n, k.m, branch_vertex_count(k) if k.n else 0,
                        max(2 * fen - 2, 0), deltas, unmatched, outcome)


def kernel_outcome(inst: KernelInstance) -> Outcome:
    if inst.outcome is not None:
        return inst.outcome
    o = outcome_of(NDAK, inst.graph)
    if inst.to_move_parity:
        o = Outcome.P if o == Outcome.N else Outcome.N
    return o
