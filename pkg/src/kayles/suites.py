"""Verification suites behind ``kayles verify``.

A suite is a named, seeded generator of cases.  Each case is evaluated
lazily so a single case can be re-run from its reproducer line.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterator

import networkx as nx

from . import generators
from .graph import Graph, feedback_edge_number, format_graph, girth, is_bipartite, is_tree
from .iso import IsoBucket, find_isomorphism
from .kernel import (KernelInstance, branch_vertex_count, kernel_outcome, kernelize,
                     rule1_trim_leaves, rule2_pair_tree_moves, rule3_replace_forests,
                     rule4_replace_paths)
from .reductions import (DNFFormula, avoid_true_outcome, avoidtrue_to_csgk, gi_gadget,
                         is_split, ndnk_gadget, nk_to_csg, split_clique_of)
from .rulesets import NDAK, ArcKayles, NDNodeKayles, NodeKayles, csg, legal_moves
from .solver import Outcome, Solver, detect_period, grundy_sequence, outcome_of, solve_grundy
from .symmetry import find_edge_disjoint_involution, verify_symmetry_strategy
from .tractable import (NotInClass, clique_tree_outcome, is_clique_tree, threshold_outcome,
                        threshold_partition, tree_outcome)

SCHEMA = "kayles.verify/1"


@dataclass
class CaseResult:
    name: str
    ok: bool
    detail: str = ""
    counterexample: Graph | None = None
    skipped: bool = False

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "ok": self.ok,
            "skipped": self.skipped,
            "detail": self.detail,
            "counterexample": format_graph(self.counterexample) if self.counterexample else None,
        }


@dataclass
class SuiteResult:
    suite: str
    seed: int
    cases: list[CaseResult] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def failures(self) -> list[CaseResult]:
        return [c for c in self.cases if not c.ok]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "suite": self.suite,
            "seed": self.seed,
            "passed": sum(c.ok and not c.skipped for c in self.cases),
            "failed": len(self.failures),
            "skipped": sum(c.skipped for c in self.cases),
            "cases": [c.to_dict() for c in self.cases],
        }


Check = Callable[[], CaseResult]


def _case(name: str, ok: bool, detail: str = "", g: Graph | None = None) -> CaseResult:
    return CaseResult(name, ok, detail, None if ok else g)


def _rng(seed: int, suite: str, index: int) -> random.Random:
    # one independent stream per (seed, suite, case)
    return random.Random(f"{seed}:{suite}:{index}")


def _edges(g: Graph) -> str:
    return " ".join(f"{u}-{v}" for u, v in g.edges()) or "-"


@lru_cache(maxsize=None)
def connected_graphs(max_n: int) -> tuple[Graph, ...]:
    """Connected graphs on 1..max_n vertices, one per isomorphism class
    (max_n <= 7)."""
    if max_n > 7:
        raise ValueError("the graph atlas stops at 7 vertices")
    out = []
    for h in nx.graph_atlas_g()[1:]:
        if h.number_of_nodes() <= max_n and nx.is_connected(h):
            out.append(Graph.from_edges(h.number_of_nodes(), list(h.edges())))
    return tuple(out)


def all_trees(max_n: int) -> Iterator[Graph]:
    yield Graph.from_edges(1, [])
    for n in range(2, max_n + 1):
        for t in nx.nonisomorphic_trees(n):
            yield Graph.from_edges(n, list(t.edges()))


@lru_cache(maxsize=None)
def all_clique_trees(max_n: int) -> tuple[Graph, ...]:
    """Every block graph whose blocks are cliques, up to isomorphism, grown
    by hanging a new clique block on an existing vertex."""
    bucket = IsoBucket()
    layer = [Graph.from_edges(1, [])]
    bucket.add(layer[0])
    while layer:
        nxt = []
        for g in layer:
            for v in range(g.n):
                for size in range(2, max_n - g.n + 2):
                    members = [v] + list(range(g.n, g.n + size - 1))
                    h = Graph.from_edges(g.n + size - 1,
                                         list(g.edges()) + list(itertools.combinations(members, 2)))
                    if bucket.add(h):
                        nxt.append(h)
        layer = nxt
    return tuple(sorted(bucket.graphs, key=lambda g: (g.n, g.m, g.edges())))


def play_lengths(rs, g: Graph) -> tuple[int, int]:
    """Shortest and longest maximal play from the full position."""
    memo: dict[int, tuple[int, int]] = {}

    def go(alive: int) -> tuple[int, int]:
        hit = memo.get(alive)
        if hit is not None:
            return hit
        moves = legal_moves(rs, g, alive)
        if not moves:
            res = (0, 0)
        else:
            sub = [go(alive & ~m) for m in moves]
            res = (1 + min(s[0] for s in sub), 1 + max(s[1] for s in sub))
        memo[alive] = res
        return res

    return go(g.full)


def octal_007(n_max: int) -> list[int]:
    """Grundy values of heaps 1..n_max in the octal game 0.07: take two
    tokens, leaving zero, one or two heaps."""
    gv = [0] * (n_max + 1)
    for n in range(2, n_max + 1):
        opts = {gv[a] ^ gv[n - 2 - a] for a in range(n - 1)}
        gv[n] = next(x for x in itertools.count() if x not in opts)
    return gv[1:]


# -- suites ----------------------------------------------------------------------

def suite_sequences(seed: int) -> Iterator[tuple[str, Check]]:
    def path_period() -> CaseResult:
        t0 = time.perf_counter()
        seq = grundy_sequence(ArcKayles, "path", 120)
        ref = octal_007(120)
        period = detect_period(seq)
        el = time.perf_counter() - t0
        diff = [n + 1 for n, (a, b) in enumerate(zip(seq, ref)) if a != b]
        ok = not diff and period is not None and period[1] == 34 and period[0] <= 68
        return _case("path-grundy-120", ok,
                     f"period={period} mismatches={diff[:5]} elapsed={el:.1f}s")

    yield "path-grundy-120", path_period
    for r, c, want in ((2, 2, Outcome.P), (2, 4, Outcome.P), (4, 4, Outcome.P),
                       (2, 3, Outcome.N), (2, 5, Outcome.N)):
        name = f"cram-{r}x{c}"

        def cram(r=r, c=c, want=want, name=name) -> CaseResult:
            g = generators.grid(r, c)
            got = outcome_of(ArcKayles, g)
            return _case(name, got == want, f"outcome={got.value} expected={want.value}", g)

        yield name, cram
    for i in range(100):
        name = f"csg1-{i}"

        def count(i=i, name=name) -> CaseResult:
            rng = _rng(seed, "csg1", i)
            n = rng.randint(1, 12)
            m = rng.randint(n - 1, min(n * (n - 1) // 2, n + 6))
            g = generators.random_connected(n, m, rng.randrange(2**32))
            got = outcome_of(csg(1), g)
            want = Outcome.N if n % 2 else Outcome.P
            return _case(name, got == want, f"n={n} outcome={got.value}", g)

        yield name, count


def suite_trees(seed: int) -> Iterator[tuple[str, Check]]:
    for k, g in enumerate(all_trees(10)):
        name = f"tree-{g.n}-{k}"

        def check(g=g, name=name) -> CaseResult:
            lo, hi = play_lengths(NDAK, g)
            fast, count = tree_outcome(g)
            slow = outcome_of(NDAK, g)
            ok = lo == hi == count and fast == slow
            return _case(name, ok, f"lengths={lo}..{hi} moves={count} "
                                   f"tree={fast.value} search={slow.value}", g)

        yield name, check


def suite_clique_trees(seed: int) -> Iterator[tuple[str, Check]]:
    def compare(g: Graph, name: str) -> CaseResult:
        fast, _ = clique_tree_outcome(g)
        slow = outcome_of(NDAK, g)
        return _case(name, fast == slow, f"fast={fast.value} search={slow.value}", g)

    for k, g in enumerate(all_clique_trees(9)):
        name = f"exhaustive-{g.n}-{k}"
        yield name, (lambda g=g, name=name: compare(g, name))
    for i in range(200):
        name = f"random-{i}"

        def rand(i=i, name=name) -> CaseResult:
            rng = _rng(seed, "clique-trees", i)
            sizes, n = [rng.randint(1, 4)], 0
            n = sizes[0]
            while True:
                s = rng.randint(2, 5)
                if n + s - 1 > 12 or rng.random() < 0.1:
                    break
                sizes.append(s)
                n += s - 1
            g = generators.clique_tree(rng.randrange(2**32), sizes)
            return compare(g, name)

        yield name, rand


def threshold_corpus() -> list[tuple[str, Graph]]:
    """Connected threshold graphs with a twin-free clique, 1 <= |K| <= 7 and
    |S| <= |K| + 2, one per degree sequence."""
    seen = set()
    out = []
    for n in range(2, 17):
        for body in itertools.product("iu", repeat=n - 2):
            word = "i" + "".join(body) + "u"
            g = generators.threshold(word)
            key = tuple(sorted(g.degree(v) for v in range(n)))
            if key in seen:
                continue
            seen.add(key)
            part = threshold_partition(g)
            k, s = part.clique_order, part.stable_order
            if part.twin_free and 1 <= k <= 7 and s <= k + 2:
                out.append((word, g))
    return out


def suite_threshold(seed: int) -> Iterator[tuple[str, Check]]:
    for word, g in threshold_corpus():
        name = f"threshold-{word}"

        def check(g=g, name=name) -> CaseResult:
            k = threshold_partition(g).clique_order
            try:
                fast = threshold_outcome(g)
            except NotInClass as exc:
                return _case(name, False, f"rejected: {exc}", g)
            slow = outcome_of(NDAK, g)
            ok = fast == slow
            if k >= 5:
                ok = ok and (slow == Outcome.P) == ((k - 1) % 3 == 0)
            return _case(name, ok, f"|K|={k} closed-form={fast.value} search={slow.value}", g)

        yield name, check


KERNEL_RULES = {
    "rule1": rule1_trim_leaves,
    "rule2": rule2_pair_tree_moves,
    "rule3": rule3_replace_forests,
    "rule4": rule4_replace_paths,
}
BOUNDEDNESS_SIZES = (20, 40, 80, 160)


def kernel_corpus_graph(seed: int, index: int) -> Graph:
    rng = _rng(seed, "kernel-rules", index)
    n = rng.randint(5, 14)
    fen = rng.randint(1, min(4, n * (n - 1) // 2 - n + 1))
    while True:
        try:
            return generators.random_with_fen(rng.randrange(2**32), n, fen)
        except ValueError:
            fen -= 1


def check_kernel_instance(g: Graph, name: str) -> CaseResult:
    want = outcome_of(NDAK, g)
    notes, ok = [], True
    if not is_tree(g):
        staged = KernelInstance(g)
        for rule, fn in KERNEL_RULES.items():
            # each rule on the raw graph and on the output of the rules before it
            for label, inst in (("raw", KernelInstance(g)), ("staged", staged)):
                out = fn(inst)
                if out.graph.n and outcome_of(NDAK, out.graph) != want:
                    ok = False
                    notes.append(f"{rule}/{label} changed the outcome")
            staged = fn(staged)
    k = kernelize(g)
    got = kernel_outcome(k)
    if got != want:
        ok = False
        notes.append(f"pipeline {got.value} != {want.value}")
    if k.graph.n:
        bound = 2 * feedback_edge_number(k.graph) - 2
        if branch_vertex_count(k.graph) > bound:
            ok = False
            notes.append("branch-vertex bound violated")
        again = kernelize(k.graph).graph
        if (again.n, again.edges()) != (k.graph.n, k.graph.edges()):
            ok = False
            notes.append("not idempotent")
    detail = f"n={g.n} fen={feedback_edge_number(g)} kernel={k.graph.n} outcome={want.value}"
    return _case(name, ok, "; ".join([detail] + notes), g)


def kernel_sizes(sizes=BOUNDEDNESS_SIZES) -> dict[int, int]:
    return {n: kernelize(generators.pendant_theta(n)).graph.n for n in sizes}


def suite_kernel_rules(seed: int) -> Iterator[tuple[str, Check]]:
    for i in range(200):
        name = f"random-{i}"
        yield name, (lambda i=i, name=name: check_kernel_instance(kernel_corpus_graph(seed, i), name))

    def bounded() -> CaseResult:
        sizes = kernel_sizes()
        return _case("boundedness", len(set(sizes.values())) == 1, f"kernel sizes {sizes}")

    yield "boundedness", bounded


def suite_reductions_nk(seed: int) -> Iterator[tuple[str, Check]]:
    for k, g in enumerate(connected_graphs(5)):
        for s in ((2,), (3,), (2, 3)):
            name = f"nk-{k}-S{''.join(map(str, s))}"

            def check(g=g, s=s, name=name) -> CaseResult:
                ref = solve_grundy(NodeKayles, g)
                gadget = nk_to_csg(g, s).graph
                solver = Solver(csg(*s), gadget, cap=None)
                gv = solver.grundy(gadget.full)
                won = solver.wins(gadget.full)
                out = Outcome.N if won else Outcome.P
                ok = (gv == ref.grundy and out == ref.outcome
                      and girth(gadget) >= 4 and is_bipartite(gadget))
                return _case(name, ok, f"edges={_edges(g)} grundy {ref.grundy}/{gv} "
                                       f"outcome {ref.outcome.value}/{out.value} "
                                       f"gadget n={gadget.n} girth={girth(gadget)}", g)

            yield name, check


def suite_reductions_ndnk(seed: int) -> Iterator[tuple[str, Check]]:
    for k, g in enumerate(connected_graphs(4)):
        name = f"ndnk-{k}"

        def check(g=g, name=name) -> CaseResult:
            if g.m == 0:
                return CaseResult(name, True, "single vertex: gadget needs an edge", skipped=True)
            want = outcome_of(NodeKayles, g)
            gadget = ndnk_gadget(g).graph
            got = outcome_of(NDNodeKayles, gadget)
            return _case(name, got == want, f"edges={_edges(g)} node-kayles={want.value} "
                                            f"gadget={got.value}", g)

        yield name, check


def random_dnf(rng: random.Random) -> DNFFormula:
    n = rng.randint(1, 4)
    m = rng.randint(1, 3)
    clauses = []
    for _ in range(m):
        size = rng.randint(1, n)
        clauses.append(rng.sample(range(n), size))
    return DNFFormula.of(n, clauses)


def check_avoid_true(f: DNFFormula, k: int, name: str, anchor: bool = False) -> CaseResult:
    want = avoid_true_outcome(f).outcome
    gadget = avoidtrue_to_csgk(f, k, anchor=anchor)
    got = outcome_of(csg(k), gadget.graph)
    split_ok = is_split(gadget.graph, split_clique_of(gadget))
    clauses = " | ".join("&".join(f"x{v}" for v in sorted(c)) for c in f.clauses)
    return _case(name, got == want and split_ok,
                 f"n={f.variable_count} {clauses} k={k} avoid-true={want.value} "
                 f"gadget={got.value} split={split_ok}", gadget.graph)


def suite_reductions_split(seed: int) -> Iterator[tuple[str, Check]]:
    for i in range(100):
        for k in (2, 3):
            name = f"dnf-{i}-k{k}"
            yield name, (lambda i=i, k=k, name=name:
                         check_avoid_true(random_dnf(_rng(seed, "dnf", i)), k, name))


def suite_symmetry(seed: int) -> Iterator[tuple[str, Check]]:
    def cycles() -> CaseResult:
        notes, ok = [], True
        for n in (6, 8):
            g = generators.cycle(n)
            f = find_edge_disjoint_involution(g)
            ak = outcome_of(ArcKayles, g)
            ok = ok and f is not None and ak == Outcome.P
            notes.append(f"C{n}: involution={'yes' if f else 'no'} arc-kayles={ak.value}")
        nd = outcome_of(NDAK, generators.cycle(6))
        ok = ok and nd == Outcome.N
        notes.append(f"C6 ndak={nd.value}")
        return _case("cycles", ok, "; ".join(notes))

    yield "cycles", cycles
    for k, g in enumerate(connected_graphs(7)):
        name = f"graph-{g.n}-{k}"

        def check(g=g, name=name) -> CaseResult:
            f = find_edge_disjoint_involution(g)
            if f is None:
                return CaseResult(name, True, "no involution", skipped=True)
            res = verify_symmetry_strategy(g, f, outcome_cap=7)
            ak = outcome_of(ArcKayles, g)
            return _case(name, res.ok and ak == Outcome.P,
                         f"edges={_edges(g)} arc-kayles={ak.value} mirror={res.ok}", g)

        yield name, check


GI_CAP = 64


def suite_gi(seed: int) -> Iterator[tuple[str, Check]]:
    graphs = connected_graphs(5)
    for i, j in itertools.combinations_with_replacement(range(len(graphs)), 2):
        name = f"pair-{i}-{j}"

        def check(g1=graphs[i], g2=graphs[j], name=name) -> CaseResult:
            iso = find_isomorphism(g1, g2) is not None
            gadget = gi_gadget(g1, g2).graph
            inv = find_edge_disjoint_involution(gadget, cap=GI_CAP) is not None
            return _case(name, iso == inv, f"{_edges(g1)} vs {_edges(g2)} "
                                           f"isomorphic={iso} involution={inv}", gadget)

        yield name, check


SUITES: dict[str, Callable[[int], Iterator[tuple[str, Check]]]] = {
    "trees": suite_trees,
    "clique-trees": suite_clique_trees,
    "threshold": suite_threshold,
    "kernel-rules": suite_kernel_rules,
    "reductions-nk": suite_reductions_nk,
    "reductions-ndnk": suite_reductions_ndnk,
    "reductions-split": suite_reductions_split,
    "symmetry": suite_symmetry,
    "sequences": suite_sequences,
    "gi": suite_gi,
}


def run_suite(name: str, seed: int = 0, case: str | None = None,
              on_case: Callable[[CaseResult], None] | None = None) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    result = SuiteResult(name, seed)
    t0 = time.perf_counter()
    for case_name, check in SUITES[name](seed):
        if case is not None and case_name != case:
            continue
        r = check()
        result.cases.append(r)
        if on_case:
            on_case(r)
    result.elapsed = time.perf_counter() - t0
    if case is not None and not result.cases:
        raise KeyError(f"suite {name!r} has no case {case!r}")
    return result
