"""Prime-field arithmetic for the hyperplane scheme.

Every scheme value lives in GF(q), where q is the smallest prime that is at
least 16**l, l being the hex length of the digest.  Digest values therefore
embed without reduction.

Moduli with ``hash_hex_len == 0`` are pure arithmetic moduli (e.g. q=7 in
tests); they cannot be used to embed digests.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71)

# Smallest prime >= 2**256, i.e. >= 16**64 (SHA-256 hex length).
PRODUCTION_Q = 2**256 + 297
PRODUCTION_HEX_LEN = 64


class ModulusMismatchError(ValueError):
    pass


class NotInvertibleError(ZeroDivisionError):
    pass


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin with the first 20 prime bases.

    Deterministic for n < 3.3e24; beyond that the error bound is 4**-20.
    """
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Modulus:
    """A prime modulus ``q`` that can hold every ``hash_hex_len``-digit hex value."""

    q: int
    hash_hex_len: int = 0

    def __post_init__(self) -> None:
        if self.hash_hex_len < 0:
            raise ValueError("hash_hex_len must be non-negative")
        if self.q <= 16**self.hash_hex_len - 1:
            raise ValueError(f"q={self.q} cannot hold {self.hash_hex_len}-digit hex values")
        if not is_probable_prime(self.q):
            raise ValueError(f"q={self.q} is not prime")

    @property
    def hex_width(self) -> int:
        """Fixed number of hex nibbles needed to print any element."""
        return -(-self.q.bit_length() // 4)

    def __call__(self, value: int) -> FieldElement:
        return FieldElement(value % self.q, self)

    def __repr__(self) -> str:
        if self.q == PRODUCTION_Q:
            return f"Modulus(q=2**256+297, hash_hex_len={self.hash_hex_len})"
        return f"Modulus(q={self.q}, hash_hex_len={self.hash_hex_len})"


def derive_modulus(hash_hex_len: int) -> Modulus:
    """Return the modulus whose q is the smallest prime >= 16**hash_hex_len."""
    if hash_hex_len < 1:
        raise ValueError("hash_hex_len must be >= 1")
    if hash_hex_len == PRODUCTION_HEX_LEN:
        return PRODUCTION_MODULUS
    q = 16**hash_hex_len
    while not is_probable_prime(q):
        q += 1
    return Modulus(q, hash_hex_len)


@dataclass(frozen=True)
class FieldElement:
    value: int
    modulus: Modulus

    def __post_init__(self) -> None:
        if not 0 <= self.value < self.modulus.q:
            raise ValueError(f"{self.value} is outside [0, {self.modulus.q - 1}]")

    def _check(self, other: FieldElement) -> None:
        if not isinstance(other, FieldElement):
            raise TypeError(f"expected FieldElement, got {type(other).__name__}")
        if other.modulus.q != self.modulus.q:
            raise ModulusMismatchError(f"q={self.modulus.q} vs q={other.modulus.q}")

    def __add__(self, other: FieldElement) -> FieldElement:
        return fe_arith(self, other, "add")

    def __sub__(self, other: FieldElement) -> FieldElement:
        return fe_arith(self, other, "sub")

    def __mul__(self, other: FieldElement) -> FieldElement:
        return fe_arith(self, other, "mul")

    def __neg__(self) -> FieldElement:
        return FieldElement(-self.value % self.modulus.q, self.modulus)

    def __int__(self) -> int:
        return self.value

    def __bool__(self) -> bool:
        return self.value != 0

    def inverse(self) -> FieldElement:
        return fe_inverse(self)

    def __repr__(self) -> str:
        return f"FieldElement({self.value} mod {self.modulus.q})"


def fe_arith(a: FieldElement, b: FieldElement, op: Literal["add", "sub", "mul"]) -> FieldElement:
    a._check(b)
    q = a.modulus.q
    if op == "add":
        v = a.value + b.value
    elif op == "sub":
        v = a.value - b.value
    elif op == "mul":
        v = a.value * b.value
    else:
        raise ValueError(f"unknown op {op!r}")
    return FieldElement(v % q, a.modulus)


def fe_inverse(a: FieldElement) -> FieldElement:
    if a.value == 0:
        raise NotInvertibleError("zero has no multiplicative inverse")
    return FieldElement(pow(a.value, -1, a.modulus.q), a.modulus)


_HEX_DIGITS = frozenset("0123456789abcdef")


def fe_from_hex(hex_string: str, m: Modulus) -> FieldElement:
    """Parse a fixed-width lowercase big-endian hex string of exactly ``m.hash_hex_len`` chars."""
    if m.hash_hex_len < 1:
        raise ValueError("modulus does not embed hex strings (hash_hex_len=0)")
    if len(hex_string) != m.hash_hex_len:
        raise ValueError(f"expected {m.hash_hex_len} hex chars, got {len(hex_string)}")
    if not _HEX_DIGITS.issuperset(hex_string):
        raise ValueError(f"invalid lowercase hex: {hex_string!r}")
    return FieldElement(int(hex_string, 16), m)


PRODUCTION_MODULUS = Modulus(PRODUCTION_Q, PRODUCTION_HEX_LEN)

# q=10007 with 3-digit hex embedding; the desk-scale modulus for experiments.
TOY_MODULUS = Modulus(10007, 3)
