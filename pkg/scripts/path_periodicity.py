"""Grundy values of Arc-Kayles on paths and cycles, checked against the
octal 0.07 heap recursion, with the detected period."""

import argparse
import time
from dataclasses import dataclass

from kayles.rulesets import ArcKayles, parse_ruleset
from kayles.solver import detect_period, grundy_sequence
from kayles.suites import octal_007


@dataclass
class Config:
    game: str = "arc-kayles"
    max_n: int = 120
    cycles: int = 40


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--game", default=Config.game)
    p.add_argument("--max-n", type=int, default=Config.max_n)
    p.add_argument("--cycles", type=int, default=Config.cycles)
    args = p.parse_args()
    cfg = Config(args.game, args.max_n, args.cycles)
    rs = parse_ruleset(cfg.game)

    t0 = time.perf_counter()
    paths = grundy_sequence(rs, "path", cfg.max_n)
    print(f"paths 1..{cfg.max_n} ({time.perf_counter() - t0:.1f}s)")
    for i in range(0, len(paths), 34):
        print(f"  {i + 1:4d}: " + " ".join(map(str, paths[i:i + 34])))
    if rs == ArcKayles:
        ref = octal_007(cfg.max_n)
        bad = [n + 1 for n, (a, b) in enumerate(zip(paths, ref)) if a != b]
        print(f"octal 0.07 mismatches: {bad or 'none'}")
    found = detect_period(paths)
    print("period: none" if found is None else f"period {found[1]}, preperiod {found[0]}")

    cycles = grundy_sequence(rs, "cycle", cfg.cycles)
    print(f"cycles 1..{cfg.cycles}: " + " ".join(map(str, cycles)))


if __name__ == "__main__":
    main()
