"""Registration and verification wall time against dimension at the production modulus."""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass, field

from opw.hashchain import SchemeParams
from opw.scheme import register, verify


@dataclass
class Config:
    dims: list[int] = field(default_factory=lambda: [25, 50, 100, 200])
    repeats: int = 3


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--dims", type=int, nargs="+", default=Config().dims)
    p.add_argument("--repeats", type=int, default=Config.repeats)
    cfg = Config(**vars(p.parse_args()))

    print(f"{'d':>5} {'register_s':>11} {'verify_ms':>10}")
    for d in cfg.dims:
        params = SchemeParams(d)
        reg, ver = [], []
        for i in range(cfg.repeats):
            t0 = time.perf_counter()
            rec = register([f"password-{i}"], params)
            reg.append(time.perf_counter() - t0)
            t0 = time.perf_counter()
            assert verify(f"password-{i}", rec)
            ver.append(time.perf_counter() - t0)
        print(f"{d:>5} {min(reg):>11.3f} {min(ver) * 1e3:>10.2f}")


if __name__ == "__main__":
    main()
