"""Registration and verification by hyperplane coefficients.

Registration places the secrets' datapoints plus random auxiliary points on
one hyperplane ``alpha . x = c`` and keeps only ``alpha``.  Verification
recomputes the candidate's datapoint and checks the dot product.
"""

from __future__ import annotations

import hmac
import secrets as _secrets
import zlib
from dataclasses import dataclass
from enum import Enum
from typing import Protocol, Sequence

from .field import PRODUCTION_MODULUS, FieldElement, Modulus
from .hashchain import DataPoint, SchemeParams, hash_chain
from .linalg import Vector, dot_product, mat_determinant, mat_solve

FORMAT_VERSION = 1
MAX_REDRAWS = 16

PAYLOAD_VERSION = 0x01
PAYLOAD_BYTES = 32
MAX_SECRET_BYTES = PAYLOAD_BYTES - 6


class RandomSource(Protocol):
    def randrange(self, stop: int) -> int: ...


class RegistrationError(ValueError):
    pass


class ModeMismatchError(ValueError):
    pass


class DecodeError(ValueError):
    """The constant term does not decode: wrong candidate or corrupted record."""


class Mode(str, Enum):
    VERIFY = "verify"
    SECRET = "secret"


@dataclass(frozen=True)
class VaultRecord:
    params: SchemeParams
    mode: Mode
    alpha: Vector
    app_id: str = "default"
    format_version: int = FORMAT_VERSION

    def __post_init__(self) -> None:
        if len(self.alpha) != self.params.dimension:
            raise ValueError(f"alpha has dim {len(self.alpha)}, expected {self.params.dimension}")
        q = self.params.modulus.q
        if any(not 0 <= a < q for a in self.alpha):
            raise ValueError("alpha entries must lie in [0, q-1]")
        if not any(self.alpha):
            raise ValueError("alpha must not be the zero vector")
        if self.format_version != FORMAT_VERSION:
            raise ValueError(f"unsupported format version {self.format_version}")


def _system_rng() -> RandomSource:
    return _secrets.SystemRandom()


def generate_aux_points(count: int, dimension: int, modulus: Modulus, rng: RandomSource | None = None) -> list[Vector]:
    """``count`` vectors drawn uniformly from GF(q)^dimension."""
    if count < 1:
        raise ValueError("need at least one auxiliary point (n must be < d)")
    rng = rng or _system_rng()
    q = modulus.q
    return [tuple(rng.randrange(q) for _ in range(dimension)) for _ in range(count)]


def fit_hyperplane(
    points: Sequence[Sequence[int]],
    constant: int,
    dimension: int,
    modulus: Modulus,
    rng: RandomSource | None = None,
) -> Vector:
    """Coefficients of a random hyperplane ``alpha . x = constant`` through ``points``.

    The remaining ``dimension - len(points)`` rows are auxiliary points,
    redrawn as a whole until the stacked matrix is nonsingular.
    """
    n = len(points)
    if not 1 <= n < dimension:
        raise RegistrationError(f"need 1 <= n < d, got n={n}, d={dimension}")
    if constant % modulus.q == 0:
        raise RegistrationError("constant term must be nonzero")
    if len({tuple(p) for p in points}) != n:
        raise RegistrationError("duplicate datapoints make the matrix singular")
    rng = rng or _system_rng()
    for _ in range(MAX_REDRAWS):
        v = [list(p) for p in points] + [list(a) for a in generate_aux_points(dimension - n, dimension, modulus, rng)]
        if mat_determinant(v, modulus):
            return mat_solve(v, [constant] * dimension, modulus)
    raise RegistrationError(f"matrix stayed singular after {MAX_REDRAWS} redraws")


def register(
    secrets: Sequence[str],
    params: SchemeParams,
    constant: FieldElement | None = None,
    rng: RandomSource | None = None,
    app_id: str = "default",
) -> VaultRecord:
    """Register one or more secrets.

    With ``constant=None`` the record is in verify mode (c = 1).  Otherwise
    it is in secret mode and ``constant`` (typically from
    :func:`encode_secret`) is recoverable only through :func:`reveal`.
    """
    if len(set(secrets)) != len(secrets):
        raise RegistrationError("secrets must be pairwise distinct")
    if constant is None:
        mode, c = Mode.VERIFY, 1
    else:
        if constant.modulus.q != params.modulus.q:
            raise RegistrationError("constant lives under a different modulus")
        mode, c = Mode.SECRET, constant.value
    points = [hash_chain(s, params) for s in secrets]
    alpha = fit_hyperplane(points, c, params.dimension, params.modulus, rng)
    return VaultRecord(params, mode, alpha, app_id)


def evaluate(candidate: str, record: VaultRecord) -> int:
    """The candidate's constant term ``alpha . hash_chain(candidate)``."""
    return dot_product(record.alpha, hash_chain(candidate, record.params), record.params.modulus)


def verify_point(point: DataPoint, record: VaultRecord) -> bool:
    c_hat = dot_product(record.alpha, point, record.params.modulus)
    width = record.params.modulus.hex_width
    return hmac.compare_digest(f"{c_hat:0{width}x}", f"{1:0{width}x}")


def verify(candidate: str, record: VaultRecord) -> bool:
    if record.mode is not Mode.VERIFY:
        raise ModeMismatchError("record is in secret mode; use reveal()")
    return verify_point(hash_chain(candidate, record.params), record)


def encode_secret(s: bytes, modulus: Modulus = PRODUCTION_MODULUS) -> FieldElement:
    """Frame ``s`` as ``0x01 | len | s | crc32`` and read it as a big-endian integer."""
    if len(s) > MAX_SECRET_BYTES:
        raise ValueError(f"secret is {len(s)} bytes; at most {MAX_SECRET_BYTES} fit")
    head = bytes([PAYLOAD_VERSION, len(s)]) + s
    value = int.from_bytes(head + zlib.crc32(head).to_bytes(4, "big"), "big")
    if value >= modulus.q:
        raise ValueError(f"modulus q={modulus.q} is too small to hold the payload")
    return FieldElement(value, modulus)


def decode_secret(c_hat: FieldElement | int) -> bytes:
    value = int(c_hat)
    if not 0 < value < 2 ** (8 * PAYLOAD_BYTES):
        raise DecodeError("value outside the payload range")
    raw = value.to_bytes(PAYLOAD_BYTES, "big").lstrip(b"\x00")
    if len(raw) < 6 or raw[0] != PAYLOAD_VERSION:
        raise DecodeError("bad payload version")
    n = raw[1]
    if len(raw) != n + 6:
        raise DecodeError("bad payload length")
    body, tag = raw[:-4], raw[-4:]
    if zlib.crc32(body).to_bytes(4, "big") != tag:
        raise DecodeError("payload checksum mismatch")
    return body[2:]


def reveal(candidate: str, record: VaultRecord) -> bytes:
    """Recover the key encoded in a secret-mode record; DecodeError on a wrong candidate."""
    if record.mode is not Mode.SECRET:
        raise ModeMismatchError("record is in verify mode; use verify()")
    return decode_secret(evaluate(candidate, record))
