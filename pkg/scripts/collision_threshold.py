"""Leak k of d records of one secret and tabulate the remaining free dimension.

    python scripts/collision_threshold.py --dims 3 4 8 16 --trials 100
"""

from __future__ import annotations

import argparse
import csv
import random
import sys
from collections import Counter
from dataclasses import dataclass, field

from opw.attacks import collision_attack, leaked_rows
from opw.field import TOY_MODULUS
from opw.hashchain import SchemeParams, hash_chain
from opw.scheme import register


@dataclass
class Config:
    dims: list[int] = field(default_factory=lambda: [3, 4, 8])
    trials: int = 100
    seed: int = 0


def run(cfg: Config) -> list[dict]:
    rows = []
    for d in cfg.dims:
        params = SchemeParams(d, "sha256", TOY_MODULUS)
        free: dict[int, Counter] = {k: Counter() for k in range(1, d + 1)}
        exact = Counter()
        for t in range(cfg.trials):
            r = random.Random(cfg.seed * 1_000_003 + d * 10_007 + t)
            secret = f"victim-{t}"
            leaked = leaked_rows([register([secret], params, rng=r) for _ in range(d)])
            victim = hash_chain(secret, params)
            for k in range(1, d + 1):
                out = collision_attack(leaked[:k], d, TOY_MODULUS)
                free[k][out.free_dim] += 1
                exact[k] += out.recovered_point == victim
        for k in range(1, d + 1):
            (mode_dim, count), = free[k].most_common(1)
            rows.append({"d": d, "k": k, "free_dim": mode_dim, "share": count / cfg.trials,
                         "recovered": exact[k] / cfg.trials})
    return rows


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--dims", type=int, nargs="+", default=Config().dims)
    p.add_argument("--trials", type=int, default=Config.trials)
    p.add_argument("--seed", type=int, default=Config.seed)
    cfg = Config(**vars(p.parse_args()))
    w = csv.DictWriter(sys.stdout, ["d", "k", "free_dim", "share", "recovered"], lineterminator="\n")
    w.writeheader()
    w.writerows(run(cfg))


if __name__ == "__main__":
    main()
