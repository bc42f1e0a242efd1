"""Kernel sizes for the fixed-fen pendant-theta family and for random
graphs of bounded feedback edge number."""

import argparse
import statistics
from dataclasses import dataclass

from kayles import generators
from kayles.graph import feedback_edge_number
from kayles.kernel import kernel_report, kernelize
from kayles.suites import kernel_corpus_graph


@dataclass
class Config:
    sizes: tuple[int, ...] = (20, 40, 80, 160, 320)
    random_graphs: int = 200
    seed: int = 0


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--sizes", type=int, nargs="+", default=list(Config.sizes))
    p.add_argument("--random-graphs", type=int, default=Config.random_graphs)
    p.add_argument("--seed", type=int, default=Config.seed)
    args = p.parse_args()
    cfg = Config(tuple(args.sizes), args.random_graphs, args.seed)

    print("pendant theta (fen 2)")
    print(f"{'n':>6} {'kernel n':>9} {'kernel m':>9}  rule deltas")
    for n in cfg.sizes:
        g = generators.pendant_theta(n)
        inst = kernelize(g)
        rep = kernel_report(g, inst, solve=False)
        print(f"{n:6d} {rep.final_n:9d} {rep.final_m:9d}  {rep.rule_deltas}")

    by_fen: dict[int, list[float]] = {}
    for i in range(cfg.random_graphs):
        g = kernel_corpus_graph(cfg.seed, i)
        k = kernelize(g).graph
        by_fen.setdefault(feedback_edge_number(g), []).append(k.n / g.n)
    print("\nrandom corpus: mean kernel/original vertex ratio by fen")
    for fen in sorted(by_fen):
        ratios = by_fen[fen]
        print(f"  fen {fen}: {statistics.mean(ratios):.2f} over {len(ratios)} graphs")


if __name__ == "__main__":
    main()
