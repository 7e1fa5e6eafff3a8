"""Dense exact linear algebra over GF(q).

Matrices are sequences of rows and vectors are sequences of ints; every
entry is taken modulo ``modulus.q``.  Plain ints keep d=100 solves with
257-bit entries well under a second; wrap results with ``modulus(x)`` when
a :class:`~opw.field.FieldElement` is wanted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from .field import FieldElement, Modulus

Vector = tuple[int, ...]
Matrix = Sequence[Sequence[int]]


class SingularMatrixError(ValueError):
    pass


def _square(m: Matrix) -> int:
    n = len(m)
    if n == 0 or any(len(row) != n for row in m):
        raise ValueError("matrix must be square and non-empty")
    return n


def row_reduce(rows: Matrix, modulus: Modulus, ncols: int | None = None) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form.

    Pivots are searched only in the first ``ncols`` columns (default: all),
    which lets callers reduce an augmented matrix.  Returns the reduced rows
    and the list of pivot columns.
    """
    q = modulus.q
    r = [[x % q for x in row] for row in rows]
    if not r:
        return r, []
    ncols = len(r[0]) if ncols is None else ncols
    pivots: list[int] = []
    top = 0
    for col in range(ncols):
        if top == len(r):
            break
        src = next((i for i in range(top, len(r)) if r[i][col]), None)
        if src is None:
            continue
        r[top], r[src] = r[src], r[top]
        inv = pow(r[top][col], -1, q)
        piv = [x * inv % q for x in r[top]]
        r[top] = piv
        for i, row in enumerate(r):
            f = row[col]
            if i != top and f:
                r[i] = [(x - f * p) % q for x, p in zip(row, piv)]
        pivots.append(col)
        top += 1
    return r, pivots


def mat_determinant(m: Matrix, modulus: Modulus) -> FieldElement:
    """Determinant by forward elimination; zero iff the rows are dependent."""
    n = _square(m)
    q = modulus.q
    a = [[x % q for x in row] for row in m]
    det = 1
    for col in range(n):
        src = next((i for i in range(col, n) if a[i][col]), None)
        if src is None:
            return modulus(0)
        if src != col:
            a[col], a[src] = a[src], a[col]
            det = -det
        piv = a[col]
        det = det * piv[col] % q
        inv = pow(piv[col], -1, q)
        for i in range(col + 1, n):
            f = a[i][col] * inv % q
            if f:
                row = a[i]
                a[i] = row[:col] + [(x - f * p) % q for x, p in zip(row[col:], piv[col:])]
    return modulus(det)


def mat_solve(m: Matrix, rhs: Sequence[int], modulus: Modulus) -> Vector:
    """Return x with m @ x == rhs (mod q).  Raises SingularMatrixError."""
    n = _square(m)
    if len(rhs) != n:
        raise ValueError(f"rhs has length {len(rhs)}, expected {n}")
    q = modulus.q
    a = [[x % q for x in row] + [b % q] for row, b in zip(m, rhs)]
    for col in range(n):
        src = next((i for i in range(col, n) if a[i][col]), None)
        if src is None:
            raise SingularMatrixError("matrix is singular")
        a[col], a[src] = a[src], a[col]
        piv = a[col]
        inv = pow(piv[col], -1, q)
        for i in range(col + 1, n):
            f = a[i][col] * inv % q
            if f:
                row = a[i]
                a[i] = row[:col] + [(x - f * p) % q for x, p in zip(row[col:], piv[col:])]
    x = [0] * n
    for i in range(n - 1, -1, -1):
        row = a[i]
        s = row[n] - sum(row[j] * x[j] for j in range(i + 1, n))
        x[i] = s * pow(row[i], -1, q) % q
    return tuple(x)


def mat_inverse(m: Matrix, modulus: Modulus) -> list[Vector]:
    n = _square(m)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(m)]
    r, pivots = row_reduce(aug, modulus, ncols=n)
    if len(pivots) < n:
        raise SingularMatrixError("matrix is singular")
    return [tuple(row[n:]) for row in r]


def mat_vec(m: Matrix, v: Sequence[int], modulus: Modulus) -> Vector:
    return tuple(dot_product(row, v, modulus) for row in m)


def dot_product(a: Sequence[int], b: Sequence[int], modulus: Modulus) -> int:
    if len(a) != len(b):
        raise ValueError(f"dimension mismatch: {len(a)} vs {len(b)}")
    return sum(x * y for x, y in zip(a, b)) % modulus.q


class Status(str, Enum):
    UNIQUE = "unique"
    UNDERDETERMINED = "underdetermined"
    INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class SolutionSpace:
    """Affine solution set of stacked equations ``alpha . x = c``.

    ``solution_dim`` is ``None`` when the system is infeasible.
    """

    rank: int
    solution_dim: int | None
    status: Status
    particular: Vector | None = None
    nullspace: tuple[Vector, ...] = field(default=())

    @property
    def point(self) -> Vector | None:
        return self.particular if self.status is Status.UNIQUE else None


def affine_solution_space(
    rows: Sequence[tuple[Sequence[int], int]], ambient_dim: int, modulus: Modulus
) -> SolutionSpace:
    if not rows:
        raise ValueError("need at least one equation")
    for alpha, _ in rows:
        if len(alpha) != ambient_dim:
            raise ValueError(f"coefficient vector has dim {len(alpha)}, expected {ambient_dim}")
    d = ambient_dim
    q = modulus.q
    r, pivots = row_reduce([list(a) + [int(c)] for a, c in rows], modulus, ncols=d)
    rank = len(pivots)
    if any(row[d] for row in r[rank:]):
        return SolutionSpace(rank, None, Status.INFEASIBLE)

    particular = [0] * d
    for i, col in enumerate(pivots):
        particular[col] = r[i][d]

    pivot_set = set(pivots)
    free = [j for j in range(d) if j not in pivot_set]
    basis = []
    for j in free:
        v = [0] * d
        v[j] = 1
        for i, col in enumerate(pivots):
            v[col] = -r[i][j] % q
        basis.append(tuple(v))

    status = Status.UNIQUE if rank == d else Status.UNDERDETERMINED
    return SolutionSpace(rank, d - rank, status, tuple(particular), tuple(basis))
