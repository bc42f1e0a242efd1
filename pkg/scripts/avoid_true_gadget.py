"""Compare the plain and the anchored split gadget against Avoid True on
random positive DNF formulas."""

import argparse
import random
from collections import Counter
from dataclasses import dataclass

from kayles.suites import check_avoid_true, random_dnf


@dataclass
class Config:
    formulas: int = 100
    ks: tuple[int, ...] = (2, 3)
    seed: int = 0


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--formulas", type=int, default=Config.formulas)
    p.add_argument("--k", type=int, nargs="+", default=list(Config.ks))
    p.add_argument("--seed", type=int, default=Config.seed)
    args = p.parse_args()
    cfg = Config(args.formulas, tuple(args.k), args.seed)

    tally: Counter = Counter()
    examples = {}
    for i in range(cfg.formulas):
        rng = random.Random(f"{cfg.seed}:dnf:{i}")
        f = random_dnf(rng)
        for k in cfg.ks:
            for anchor in (False, True):
                res = check_avoid_true(f, k, f"dnf-{i}-k{k}", anchor=anchor)
                tally[anchor, k, res.ok] += 1
                if not res.ok:
                    examples.setdefault((anchor, k), res.detail)
    for anchor in (False, True):
        label = "anchored" if anchor else "plain"
        for k in cfg.ks:
            ok, bad = tally[anchor, k, True], tally[anchor, k, False]
            print(f"{label:8} k={k}: {ok} agree, {bad} disagree")
            if (anchor, k) in examples:
                print(f"  e.g. {examples[anchor, k]}")


if __name__ == "__main__":
    main()
