"""Credential hiding with random hyperplanes over GF(q)."""

from .field import PRODUCTION_MODULUS, TOY_MODULUS, FieldElement, Modulus, derive_modulus
from .hashchain import SchemeParams, hash_chain
from .scheme import (
    DecodeError,
    Mode,
    ModeMismatchError,
    RegistrationError,
    VaultRecord,
    decode_secret,
    encode_secret,
    register,
    reveal,
    verify,
)

__all__ = [
    "PRODUCTION_MODULUS",
    "TOY_MODULUS",
    "FieldElement",
    "Modulus",
    "derive_modulus",
    "SchemeParams",
    "hash_chain",
    "DecodeError",
    "Mode",
    "ModeMismatchError",
    "RegistrationError",
    "VaultRecord",
    "decode_secret",
    "encode_secret",
    "register",
    "reveal",
    "verify",
]
