"""Empirical hit rate of uniformly guessed points against one hyperplane, for several primes."""

from __future__ import annotations

import argparse
import math
import random
from dataclasses import dataclass, field

from opw.attacks import brute_force_trial
from opw.field import Modulus


@dataclass
class Config:
    primes: list[int] = field(default_factory=lambda: [101, 1009, 10007])
    dim: int = 3
    samples: int = 200_000
    seed: int = 1


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--primes", type=int, nargs="+", default=Config().primes)
    p.add_argument("--dim", type=int, default=Config.dim)
    p.add_argument("--samples", type=int, default=Config.samples)
    p.add_argument("--seed", type=int, default=Config.seed)
    cfg = Config(**vars(p.parse_args()))

    r = random.Random(cfg.seed)
    print(f"{'q':>8} {'hits':>8} {'expected':>10} {'z':>7}")
    for q in cfg.primes:
        m = Modulus(q)
        alpha = [r.randrange(1, q) for _ in range(cfg.dim)]
        hits = brute_force_trial(alpha, 1, cfg.samples, m, r)
        mu = cfg.samples / q
        z = (hits - mu) / math.sqrt(mu * (1 - 1 / q))
        print(f"{q:>8} {hits:>8} {mu:>10.2f} {z:>7.2f}")


if __name__ == "__main__":
    main()
