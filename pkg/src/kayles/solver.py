"""Exact outcome and Sprague-Grundy search over alive-vertex bitmasks."""

from __future__ import annotations

import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from .graph import Graph, bits_to_list, connected_components, is_connected
from .rulesets import Ruleset, legal_moves, move_orbits
from . import generators

VERTEX_CAP = 63
PATH_SEQUENCE_CAP = 140
CYCLE_SEQUENCE_CAP = 63

sys.setrecursionlimit(max(sys.getrecursionlimit(), 10_000))


class CapExceeded(ValueError):
    pass


class Outcome(str, Enum):
    N = "N"
    P = "P"

    def __str__(self) -> str:
        return self.value


def mex(values: Iterable[int]) -> int:
    present = set(values)
    k = 0
    while k in present:
        k += 1
    return k


@dataclass
class SolveReport:
    outcome: Outcome
    grundy: int | None = None
    best_move: int | None = None
    nodes_expanded: int = 0
    table_entries: int = 0

    def to_dict(self) -> dict:
        return {
            "outcome": self.outcome.value,
            "grundy": self.grundy,
            "best_move": bits_to_list(self.best_move) if self.best_move is not None else None,
            "nodes_expanded": self.nodes_expanded,
            "table_entries": self.table_entries,
        }

    def to_record(self) -> str:
        d = self.to_dict()
        lines = [f"outcome: {d['outcome']}"]
        if d["grundy"] is not None:
            lines.append(f"grundy: {d['grundy']}")
        if d["best_move"] is not None:
            lines.append("best_move: " + " ".join(map(str, d["best_move"])))
        lines.append(f"nodes_expanded: {d['nodes_expanded']}")
        lines.append(f"table_entries: {d['table_entries']}")
        return "\n".join(lines) + "\n"


class Solver:
    """Memoised negamax / mex search for one ruleset on one host graph.

    The transposition tables are keyed by alive masks only, since the host
    graph and ruleset are fixed per instance.  For disconnecting rulesets the
    Grundy table holds connected components and positions are XOR-decomposed.
    """

    def __init__(self, rs: Ruleset, g: Graph, *, use_table: bool = True,
                 use_orbits: bool = True, cap: int | None = VERTEX_CAP):
        if cap is not None and g.n > cap:
            raise CapExceeded(f"exhaustive search capped at {cap} vertices (graph has {g.n})")
        self.rs = rs
        self.g = g
        self.use_table = use_table
        self.use_orbits = use_orbits
        self.win_table: dict[int, bool] = {}
        self.grundy_table: dict[int, int] = {}
        self.nodes_expanded = 0

    def moves(self, alive: int) -> list[int]:
        self.nodes_expanded += 1
        ms = legal_moves(self.rs, self.g, alive)
        if self.use_orbits:
            ms = move_orbits(self.rs, self.g, alive, ms)
        return ms

    def wins(self, alive: int) -> bool:
        """True iff the player to move wins (outcome N)."""
        if self.use_table:
            hit = self.win_table.get(alive)
            if hit is not None:
                return hit
        result = False
        for m in self.moves(alive):
            if not self.wins(alive & ~m):
                result = True
                break
        if self.use_table:
            self.win_table[alive] = result
        return result

    def grundy(self, alive: int) -> int:
        if self.rs.disconnecting:
            value = 0
            for comp in connected_components(self.g, alive):
                value ^= self._grundy_single(comp)
            return value
        return self._grundy_single(alive)

    def _grundy_single(self, alive: int) -> int:
        if self.use_table:
            hit = self.grundy_table.get(alive)
            if hit is not None:
                return hit
        value = mex(self.grundy(alive & ~m) for m in self.moves(alive))
        if self.use_table:
            self.grundy_table[alive] = value
        return value

    def best_move(self, alive: int, *, by_grundy: bool = False) -> int | None:
        """Smallest move to a P-position, or None for P-positions."""
        for m in self.moves(alive):
            rest = alive & ~m
            lost = self.grundy(rest) == 0 if by_grundy else not self.wins(rest)
            if lost:
                return m
        return None

    def report(self, alive: int, *, with_grundy: bool = False, workers: int = 1) -> SolveReport:
        if workers > 1 and not with_grundy:
            win = self._parallel_root(alive, workers)
        elif with_grundy:
            win = self.grundy(alive) != 0
        else:
            win = self.wins(alive)
        grundy = self.grundy(alive) if with_grundy else None
        best = self.best_move(alive, by_grundy=with_grundy) if win else None
        entries = len(self.grundy_table) if with_grundy else len(self.win_table)
        return SolveReport(Outcome.N if win else Outcome.P, grundy, best,
                           self.nodes_expanded, entries)

    def _parallel_root(self, alive: int, workers: int) -> bool:
        # table writes are idempotent: every entry is a function of its key
        options = [alive & ~m for m in self.moves(alive)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            lost = list(pool.map(lambda pos: not self.wins(pos), options))
        win = any(lost)
        if self.use_table:
            self.win_table[alive] = win
        return win


def _check_start(rs: Ruleset, g: Graph, alive: int) -> None:
    if not rs.disconnecting and not is_connected(g, alive):
        raise ValueError(f"{rs.name} positions must be connected")


def solve_outcome(rs: Ruleset, g: Graph, alive: int | None = None, *,
                  use_table: bool = True, use_orbits: bool = True,
                  workers: int = 1) -> SolveReport:
    if alive is None:
        alive = g.full
    solver = Solver(rs, g, use_table=use_table, use_orbits=use_orbits)
    _check_start(rs, g, alive)
    return solver.report(alive, workers=workers)


def solve_grundy(rs: Ruleset, g: Graph, alive: int | None = None, *,
                 use_table: bool = True, use_orbits: bool = True) -> SolveReport:
    if alive is None:
        alive = g.full
    solver = Solver(rs, g, use_table=use_table, use_orbits=use_orbits)
    _check_start(rs, g, alive)
    return solver.report(alive, with_grundy=True)


def outcome_of(rs: Ruleset, g: Graph, alive: int | None = None) -> Outcome:
    return solve_outcome(rs, g, alive).outcome


def grundy_sequence(rs: Ruleset, family: str, n_max: int) -> list[int]:
    """Grundy values of the family member on n vertices for n = 1..n_max.

    Paths share one host path on ``n_max`` vertices (each P_n is the prefix
    position), so the cap is the sequence cap rather than the word cap.
    """
    if family == "path":
        if n_max > PATH_SEQUENCE_CAP:
            raise CapExceeded(f"path sequences capped at n={PATH_SEQUENCE_CAP}")
        if n_max < 1:
            return []
        solver = Solver(rs, generators.path(n_max), cap=None)
        return [solver.grundy((1 << n) - 1) for n in range(1, n_max + 1)]
    if family == "cycle":
        if n_max > CYCLE_SEQUENCE_CAP:
            raise CapExceeded(f"cycle sequences capped at n={CYCLE_SEQUENCE_CAP}")
        out = []
        for n in range(1, n_max + 1):
            host = generators.cycle(n) if n >= 3 else generators.path(n)
            out.append(Solver(rs, host).grundy(host.full))
        return out
    raise ValueError(f"unknown sequence family {family!r}")


def detect_period(seq: list[int]) -> tuple[int, int] | None:
    """Smallest (preperiod, period), compared lexicographically, such that
    ``seq[i] == seq[i + period]`` for every ``i >= preperiod`` that fits and
    the checked stretch ``seq[preperiod:]`` spans at least two periods."""
    n = len(seq)
    for p in range(n):
        for d in range(1, (n - p) // 2 + 1):
            if all(seq[i] == seq[i + d] for i in range(p, n - d)):
                return p, d
    return None


def subtraction_heap_grundy(subtraction: Iterable[int], m: int) -> int:
    sizes = sorted(set(subtraction))
    if not sizes or sizes[0] < 1:
        raise ValueError("subtraction set must be non-empty positive integers")
    if m < 0:
        raise ValueError("heap size must be non-negative")
    g = [0] * (m + 1)
    for h in range(1, m + 1):
        g[h] = mex(g[h - k] for k in sizes if k <= h)
    return g[m]
