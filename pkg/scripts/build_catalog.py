"""Rebuild the shipped path catalog (or a custom one) and report its size."""

import argparse
import time
from dataclasses import dataclass
from pathlib import Path

from kayles.kernel import ALPHABETS, CATALOG_PATH, DEFAULT_L_MAX, build_path_catalog


@dataclass
class Config:
    l_max: int = DEFAULT_L_MAX
    alphabet: tuple[str, ...] = ("type0", "type1")
    output: Path = CATALOG_PATH


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--lmax", type=int, default=Config.l_max)
    p.add_argument("--alphabet", nargs="+", choices=sorted(ALPHABETS), default=list(Config.alphabet))
    p.add_argument("--output", type=Path, default=Config.output)
    args = p.parse_args()
    cfg = Config(args.lmax, tuple(args.alphabet), args.output)

    t0 = time.perf_counter()
    cat = build_path_catalog(cfg.l_max, cfg.alphabet)
    cat.save(cfg.output)
    print(f"{len(cat.entries)} classes up to length {cfg.l_max} "
          f"over {', '.join(cfg.alphabet)} in {time.perf_counter() - t0:.1f}s -> {cfg.output}")


if __name__ == "__main__":
    main()
