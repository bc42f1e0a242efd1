"""Gadget constructions from the hardness reductions, and the Avoid True game.

Every construction returns a :class:`Gadget`: the output graph plus a
provenance entry ``(role, source)`` per output vertex, so equivalence checks
can report counterexamples in terms of the input.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .graph import Graph, GraphError, girth, is_connected, iter_bits
from .solver import CapExceeded, Outcome, SolveReport

AVOID_TRUE_CAP = 24


@dataclass
class Gadget:
    graph: Graph
    provenance: list[tuple[str, str]]
    info: dict = field(default_factory=dict)

    def role(self, v: int) -> str:
        return self.provenance[v][0]

    def vertices_with_role(self, role: str) -> list[int]:
        return [v for v, (r, _) in enumerate(self.provenance) if r == role]

    def format_map(self) -> str:
        return "".join(f"{v}\t{r}\t{s}\n" for v, (r, s) in enumerate(self.provenance))


class _Builder:
    def __init__(self):
        self.prov: list[tuple[str, str]] = []
        self.edges: list[tuple[int, int]] = []

    def add(self, role: str, source: str = "-") -> int:
        self.prov.append((role, source))
        return len(self.prov) - 1

    def leaves(self, centre: int, count: int, role: str, source: str = "-") -> None:
        for _ in range(count):
            self.edges.append((centre, self.add(role, source)))

    def build(self, **info) -> Gadget:
        return Gadget(Graph.from_edges(len(self.prov), self.edges), self.prov, info)


# -- Node-Kayles -> CSG(S) -----------------------------------------------------

def nk_to_csg(g: Graph, subtraction, target_girth: int | None = None) -> Gadget:
    """CSG(S) position whose game tree equals Node-Kayles on ``g``.

    Control vertex with M+1 leaves; a star with M-1 leaves per vertex, joined
    to the control vertex; a vertex with M leaves per edge, joined to both
    endpoint stars.  M = max(S).
    """
    sizes = sorted(set(subtraction))
    if not sizes or sizes[0] < 1:
        raise GraphError("subtraction set must be non-empty positive integers")
    if 1 in sizes:
        raise GraphError("reduction requires 1 not in S")
    if target_girth is not None and (target_girth < 4 or target_girth % 2):
        raise GraphError("target girth must be an even integer >= 4")
    big_m = sizes[-1]
    b = _Builder()
    control = b.add("control")
    b.leaves(control, big_m + 1, "control-leaf")
    centre = []
    for v in range(g.n):
        c = b.add("vertex-centre", f"v{v}")
        centre.append(c)
        b.leaves(c, big_m - 1, "vertex-leaf", f"v{v}")
        b.edges.append((control, c))
    for u, v in g.edges():
        e = b.add("edge-vertex", f"e{u}-{v}")
        b.leaves(e, big_m, "edge-leaf", f"e{u}-{v}")
        b.edges += [(centre[u], e), (centre[v], e)]
    gadget = b.build(M=big_m, rounds=0)
    if target_girth is not None:
        gadget = _boost_girth(gadget, big_m, target_girth)
    gadget.info["girth"] = girth(gadget.graph)
    return gadget


def _boost_girth(gadget: Gadget, big_m: int, target: int) -> Gadget:
    rounds = 0
    while girth(gadget.graph) < target:
        g = gadget.graph
        b = _Builder()
        b.prov = list(gadget.provenance)
        for u, v in g.edges():
            if g.degree(u) == 1 or g.degree(v) == 1:
                b.edges.append((u, v))
                continue
            s = b.add("subdivision", f"{u}-{v}")
            b.leaves(s, big_m + 1, "subdivision-leaf", f"{u}-{v}")
            b.edges += [(u, s), (s, v)]
        rounds += 1
        gadget = b.build(**{**gadget.info, "rounds": rounds})
    return gadget


def nk_to_csg_vertex_count(n: int, m: int, big_m: int) -> int:
    return big_m * n + (big_m + 1) * m + big_m + 2


# -- Node-Kayles -> Non-Disconnecting Node-Kayles -------------------------------

def ndnk_gadget(g: Graph, join_subdivisions: bool = True) -> Gadget:
    """Replace each edge uv by u - e1 - e2 - v plus a K_{3,3} copy one of whose
    vertices sees both e1 and e2; with ``join_subdivisions`` all e1/e2
    vertices of all edges are made pairwise adjacent."""
    if g.m == 0:
        raise GraphError("ndnk_gadget needs at least one edge")
    b = _Builder()
    for v in range(g.n):
        b.add("vertex", f"v{v}")
    subdivisions = []
    for u, v in g.edges():
        src = f"e{u}-{v}"
        e1 = b.add("subdivision-1", src)
        e2 = b.add("subdivision-2", src)
        b.edges += [(u, e1), (e1, e2), (e2, v)]
        side_a = [b.add("k33-a", src) for _ in range(3)]
        side_b = [b.add("k33-b", src) for _ in range(3)]
        b.edges += [(x, y) for x in side_a for y in side_b]
        b.edges += [(side_a[1], e1), (side_a[1], e2)]
        subdivisions += [e1, e2]
    if join_subdivisions:
        for x, y in itertools.combinations(subdivisions, 2):
            if (x, y) not in b.edges and (y, x) not in b.edges:
                b.edges.append((x, y))
    return b.build(join_subdivisions=join_subdivisions)


# -- Avoid True ------------------------------------------------------------------

@dataclass(frozen=True)
class DNFFormula:
    """Positive DNF: a disjunction of conjunctions of variables 0..n-1."""

    variable_count: int
    clauses: tuple[frozenset[int], ...]

    def __post_init__(self):
        if self.variable_count < 0:
            raise ValueError("negative variable count")
        for c in self.clauses:
            if not c:
                raise ValueError("empty clause")
            if min(c) < 0 or max(c) >= self.variable_count:
                raise ValueError(f"clause {sorted(c)} out of range")

    @classmethod
    def of(cls, n: int, clauses) -> "DNFFormula":
        return cls(n, tuple(frozenset(c) for c in clauses))

    def clause_masks(self) -> list[int]:
        return [sum(1 << x for x in c) for c in self.clauses]

    def satisfied(self, true_set: int) -> bool:
        return any(c & true_set == c for c in self.clause_masks())


def parse_dnf(text: str) -> DNFFormula:
    header = None
    clauses = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 4 or parts[:2] != ["p", "dnf"]:
                raise ValueError(f"line {lineno}: expected header 'p dnf n m'")
            header = int(parts[2]), int(parts[3])
            continue
        try:
            clause = frozenset(int(x) for x in parts)
        except ValueError:
            raise ValueError(f"line {lineno}: non-integer variable") from None
        if not clause or min(clause) < 0 or max(clause) >= header[0]:
            raise ValueError(f"line {lineno}: variable index out of range")
        clauses.append(clause)
    if header is None:
        raise ValueError("missing 'p dnf n m' header")
    if len(clauses) != header[1]:
        raise ValueError(f"header declares {header[1]} clauses, found {len(clauses)}")
    return DNFFormula(header[0], tuple(clauses))


def format_dnf(f: DNFFormula) -> str:
    lines = [f"p dnf {f.variable_count} {len(f.clauses)}"]
    lines += [" ".join(map(str, sorted(c))) for c in f.clauses]
    return "\n".join(lines) + "\n"


def avoid_true_moves(f: DNFFormula, true_set: int) -> list[int]:
    masks = f.clause_masks()
    out = []
    for x in range(f.variable_count):
        if true_set >> x & 1:
            continue
        after = true_set | (1 << x)
        if not any(c & after == c for c in masks):
            out.append(x)
    return out


def avoid_true_outcome(f: DNFFormula) -> SolveReport:
    if f.variable_count > AVOID_TRUE_CAP:
        raise CapExceeded(f"Avoid True search capped at {AVOID_TRUE_CAP} variables")
    table: dict[int, bool] = {}
    expanded = 0

    def wins(true_set: int) -> bool:
        nonlocal expanded
        hit = table.get(true_set)
        if hit is not None:
            return hit
        expanded += 1
        result = any(not wins(true_set | (1 << x)) for x in avoid_true_moves(f, true_set))
        table[true_set] = result
        return result

    win = wins(0)
    best = None
    if win:
        best = next(1 << x for x in avoid_true_moves(f, 0) if not wins(1 << x))
    return SolveReport(Outcome.N if win else Outcome.P, None, best, expanded, len(table))


def avoidtrue_to_csgk(f: DNFFormula, k: int, anchor: bool = False) -> Gadget:
    """Split graph: clique on one vertex per variable, each with k-1 pendant
    leaves, and one stable vertex per clause joined to its variables.

    ``anchor`` adds a clique vertex with k+1 leaves that can never be removed,
    so a lone clause vertex can never be the whole residue.
    """
    if k < 2:
        raise GraphError("k must be at least 2")
    b = _Builder()
    var = [b.add("variable", f"x{i}") for i in range(f.variable_count)]
    b.edges += list(itertools.combinations(var, 2))
    for i, v in enumerate(var):
        b.leaves(v, k - 1, "variable-leaf", f"x{i}")
    for j, clause in enumerate(f.clauses):
        c = b.add("clause", f"C{j}")
        b.edges += [(var[i], c) for i in sorted(clause)]
    if anchor:
        w = b.add("anchor")
        b.edges += [(v, w) for v in var]
        b.leaves(w, k + 1, "anchor-leaf")
    return b.build(k=k, anchor=anchor)


def is_split(g: Graph, clique: int) -> bool:
    """Check that ``clique`` is a clique and its complement is stable."""
    stable = g.full & ~clique
    for v in iter_bits(clique):
        if (g.adj[v] | (1 << v)) & clique != clique:
            return False
    return all(g.adj[v] & stable == 0 for v in iter_bits(stable))


def split_clique_of(gadget: Gadget) -> int:
    roles = ("variable", "anchor")
    return sum(1 << v for v, (r, _) in enumerate(gadget.provenance) if r in roles)


# -- Graph isomorphism -> edge-disjoint involution ---------------------------------

def gi_gadget(g1: Graph, g2: Graph) -> Gadget:
    """Disjoint union of both graphs, each with a universal vertex plus a
    leaf on it and every edge subdivided once; K_2 if the orders differ."""
    if g1.n != g2.n:
        b = _Builder()
        x = b.add("mismatch")
        y = b.add("mismatch")
        b.edges.append((x, y))
        return b.build(mismatch=True)
    b = _Builder()
    for side, g in ((1, g1), (2, g2)):
        base = len(b.prov)
        for v in range(g.n):
            b.add(f"vertex-{side}", f"v{v}")
        u = b.add(f"universal-{side}")
        leaf = b.add(f"leaf-{side}")
        edges = [(base + x, base + y) for x, y in g.edges()]
        edges += [(base + v, u) for v in range(g.n)]
        edges.append((u, leaf))
        for x, y in edges:
            s = b.add(f"subdivision-{side}", f"{x}-{y}")
            b.edges += [(x, s), (s, y)]
    return b.build(mismatch=False)


def connected_or_raise(g: Graph) -> None:
    if not is_connected(g):
        raise GraphError("input graph must be connected")
