"""Attack experiments against leaked coefficient vectors.

* brute force: random points hit a hyperplane with probability 1/q;
* dictionary reuse: the same secret yields a different alpha per application;
* database collision: k leaked records of one secret cut the candidate set
  to an affine space of dimension d - k, and pin the datapoint at k = d.

All attacks assume verify-mode records, where the constant term is 1.
"""

from __future__ import annotations

import csv
import io
import secrets as _secrets
import time
from dataclasses import dataclass
from typing import Callable, Sequence

from .field import FieldElement, Modulus, NotInvertibleError
from .hashchain import DataPoint, SchemeParams, hash_chain
from .linalg import Status, affine_solution_space, dot_product
from .scheme import Mode, RandomSource, VaultRecord, register

LeakedRow = tuple[Sequence[int], int]


@dataclass(frozen=True)
class AttackOutcome:
    leaked_count: int
    rank: int
    free_dim: int
    recovered_point: DataPoint | None
    feasible: bool = True

    @property
    def recovery_success(self) -> bool:
        return self.recovered_point is not None


def leaked_rows(records: Sequence[VaultRecord]) -> list[LeakedRow]:
    """Equations ``alpha . x = 1`` from leaked verify-mode records."""
    rows = []
    for r in records:
        if r.mode is not Mode.VERIFY:
            raise ValueError(f"record {r.app_id!r} is in secret mode; its constant is unknown")
        rows.append((r.alpha, 1))
    return rows


def collision_attack(leaked: Sequence[LeakedRow], d: int, modulus: Modulus) -> AttackOutcome:
    space = affine_solution_space(leaked, d, modulus)
    feasible = space.status is not Status.INFEASIBLE
    return AttackOutcome(len(leaked), space.rank, d - space.rank, space.point, feasible)


def axis_intersection_solve(
    alpha: Sequence[int], c: int, fixed_coords: Sequence[int], free_axis: int, modulus: Modulus
) -> FieldElement:
    """Value of coordinate ``free_axis`` putting the point on ``alpha . x = c``.

    ``fixed_coords`` holds the other d-1 coordinates in order, skipping the free axis.
    """
    if len(fixed_coords) != len(alpha) - 1:
        raise ValueError(f"need {len(alpha) - 1} fixed coordinates, got {len(fixed_coords)}")
    a = alpha[free_axis] % modulus.q
    if a == 0:
        raise NotInvertibleError(f"hyperplane is parallel to axis {free_axis}")
    others = [x for i, x in enumerate(alpha) if i != free_axis]
    rest = dot_product(others, fixed_coords, modulus)
    return modulus((c - rest) * pow(a, -1, modulus.q))


def brute_force_trial(
    alpha: Sequence[int], c: int, samples: int, modulus: Modulus, rng: RandomSource | None = None
) -> int:
    """Count uniform random points of GF(q)^d lying on ``alpha . x = c``."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = rng or _secrets.SystemRandom()
    q = modulus.q
    c %= q
    randrange = rng.randrange
    hits = 0
    for _ in range(samples):
        if sum(a * randrange(q) for a in alpha) % q == c:
            hits += 1
    return hits


def dictionary_reuse_check(
    secret: str,
    app_count: int,
    params: SchemeParams,
    rng_factory: Callable[[int], RandomSource] | None = None,
) -> bool:
    """Register ``secret`` with ``app_count`` apps; True iff every alpha differs.

    ``rng_factory(i)`` supplies the randomness for app ``i`` (default: system RNG).
    """
    if app_count < 2:
        raise ValueError("app_count must be >= 2")
    alphas = {
        register([secret], params, rng=rng_factory(i) if rng_factory else None, app_id=f"app{i}").alpha
        for i in range(app_count)
    }
    return len(alphas) == app_count


@dataclass(frozen=True)
class LeakStep:
    k: int
    rank: int
    free_dim: int
    recovered: bool
    matches_victim: bool
    seconds: float


def leak_simulation(
    secret: str, apps: int, params: SchemeParams, rng: RandomSource | None = None
) -> list[LeakStep]:
    """Register one secret into ``apps`` applications and leak them one by one."""
    records = [register([secret], params, rng=rng, app_id=f"app{i}") for i in range(apps)]
    victim = hash_chain(secret, params)
    rows = leaked_rows(records)
    steps = []
    for k in range(1, apps + 1):
        t0 = time.perf_counter()
        out = collision_attack(rows[:k], params.dimension, params.modulus)
        steps.append(
            LeakStep(k, out.rank, out.free_dim, out.recovery_success, out.recovered_point == victim,
                     time.perf_counter() - t0)
        )
    return steps


def format_report(steps: Sequence[LeakStep], fmt: str = "text") -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["k", "rank", "free_dim", "recovered", "matches_victim", "seconds"])
        for s in steps:
            w.writerow([s.k, s.rank, s.free_dim, int(s.recovered), int(s.matches_victim), f"{s.seconds:.6f}"])
        return buf.getvalue()
    lines = [f"{'k':>4} {'rank':>5} {'free_dim':>8}  recovered  time"]
    for s in steps:
        flag = "yes (matches victim)" if s.matches_victim else ("yes" if s.recovered else "no")
        lines.append(f"{s.k:>4} {s.rank:>5} {s.free_dim:>8}  {flag:<9}  {s.seconds * 1e3:.2f} ms")
    return "\n".join(lines) + "\n"
