"""Iterated-digest datapoints.

A secret is turned into a d-dimensional point by hashing it, then hashing the
lowercase hex text of each digest in turn::

    h1 = H(utf8(secret))
    h(i+1) = H(ascii(hex(h_i)))
    x_i = int(hex(h_i)[:l], 16)

With the production modulus l is the full digest length, so ``x_i`` is the
whole digest.  Toy moduli keep only the leading ``l`` hex digits.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

from .field import PRODUCTION_MODULUS, Modulus, derive_modulus

# Registered digest algorithms and their hex lengths.
HASH_ALGOS: dict[str, int] = {
    "sha256": 64,
    "sha384": 96,
    "sha512": 128,
    "sha3_256": 64,
    "sha3_512": 128,
}

DataPoint = tuple[int, ...]


@dataclass(frozen=True)
class SchemeParams:
    dimension: int = 100
    hash_algo: str = "sha256"
    modulus: Modulus = field(default=PRODUCTION_MODULUS)

    def __post_init__(self) -> None:
        if self.dimension < 2:
            raise ValueError("dimension must be >= 2")
        if self.hash_algo not in HASH_ALGOS:
            raise ValueError(f"unknown hash algorithm {self.hash_algo!r}")
        l = self.modulus.hash_hex_len
        if not 1 <= l <= HASH_ALGOS[self.hash_algo]:
            raise ValueError(
                f"modulus embeds {l} hex digits; {self.hash_algo} digests have {HASH_ALGOS[self.hash_algo]}"
            )

    @classmethod
    def for_algo(cls, hash_algo: str, dimension: int = 100) -> SchemeParams:
        """Full-width parameters: q is the smallest prime >= 16**digest_hex_len."""
        return cls(dimension, hash_algo, derive_modulus(HASH_ALGOS[hash_algo]))

    @property
    def is_full_width(self) -> bool:
        return self.modulus.hash_hex_len == HASH_ALGOS[self.hash_algo]


def digest_chain(secret: str, rounds: int, hash_algo: str = "sha256") -> list[str]:
    """Return the hex digests h_1 .. h_rounds."""
    new = getattr(hashlib, hash_algo)
    h = new(secret.encode("utf-8")).hexdigest()
    out = [h]
    for _ in range(rounds - 1):
        h = new(h.encode("ascii")).hexdigest()
        out.append(h)
    return out


def hash_chain(secret: str, params: SchemeParams) -> DataPoint:
    if not secret:
        raise ValueError("secret must be non-empty")
    l = params.modulus.hash_hex_len
    # hexdigest() is always lowercase and full width, so int() equals fe_from_hex here
    return tuple(int(h[:l], 16) for h in digest_chain(secret, params.dimension, params.hash_algo))
