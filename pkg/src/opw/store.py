"""Text serialization of vault records and multi-application vault files.

A record block looks like::

    record 1
    app_id mail
    hash sha256
    dim 3
    hex_len 64
    modulus 10000000000000000000000000000000000000000000000000000000000000129
    mode verify
    alpha
    <d lines of fixed-width lowercase hex>
    end

Coefficients are printed with ``ceil(bits(q) / 4)`` nibbles.  A vault file is
the line ``opw-vault 1`` followed by record blocks.
"""

from __future__ import annotations

import os
import re
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

from .field import Modulus
from .hashchain import HASH_ALGOS, SchemeParams
from .scheme import FORMAT_VERSION, Mode, VaultRecord

VAULT_MAGIC = "opw-vault"
VAULT_VERSION = 1
_HEADER_KEYS = ("app_id", "hash", "dim", "hex_len", "modulus", "mode")
_APP_ID = re.compile(r"[A-Za-z0-9._@+-]{1,128}")
_HEX = re.compile(r"[0-9a-f]+")
_DEC = re.compile(r"0|[1-9][0-9]*")


class VaultFormatError(ValueError):
    pass


class AppNotFoundError(KeyError):
    pass


class DuplicateAppError(ValueError):
    pass


def serialize_record(r: VaultRecord) -> str:
    m = r.params.modulus
    w = m.hex_width
    lines = [
        f"record {r.format_version}",
        f"app_id {r.app_id}",
        f"hash {r.params.hash_algo}",
        f"dim {r.params.dimension}",
        f"hex_len {m.hash_hex_len}",
        f"modulus {m.q:x}",
        f"mode {r.mode.value}",
        "alpha",
        *(f"{a:0{w}x}" for a in r.alpha),
        "end",
    ]
    return "\n".join(lines) + "\n"


def _int(text: str, what: str) -> int:
    if not _DEC.fullmatch(text):
        raise VaultFormatError(f"{what}: not a decimal integer: {text!r}")
    return int(text)


def _parse_block(lines: list[str]) -> VaultRecord:
    if not lines:
        raise VaultFormatError("empty record")
    head = lines[0].split(" ")
    if len(head) != 2 or head[0] != "record":
        raise VaultFormatError(f"expected 'record <version>', got {lines[0]!r}")
    version = _int(head[1], "record version")
    if version != FORMAT_VERSION:
        raise VaultFormatError(f"unknown record version {version}")

    fields: dict[str, str] = {}
    i = 1
    while i < len(lines) and lines[i] != "alpha":
        key, sep, value = lines[i].partition(" ")
        if not sep or not value:
            raise VaultFormatError(f"malformed header line {lines[i]!r}")
        if key not in _HEADER_KEYS:
            raise VaultFormatError(f"unknown field {key!r}")
        if key in fields:
            raise VaultFormatError(f"duplicate field {key!r}")
        fields[key] = value
        i += 1
    missing = [k for k in _HEADER_KEYS if k not in fields]
    if missing:
        raise VaultFormatError(f"missing fields: {', '.join(missing)}")
    if i == len(lines):
        raise VaultFormatError("missing 'alpha' section")
    if lines[-1] != "end":
        raise VaultFormatError("record not terminated by 'end'")

    if not _APP_ID.fullmatch(fields["app_id"]):
        raise VaultFormatError(f"invalid app_id {fields['app_id']!r}")
    if fields["hash"] not in HASH_ALGOS:
        raise VaultFormatError(f"unknown hash algorithm {fields['hash']!r}")
    try:
        mode = Mode(fields["mode"])
    except ValueError:
        raise VaultFormatError(f"unknown mode {fields['mode']!r}") from None
    if not _HEX.fullmatch(fields["modulus"]):
        raise VaultFormatError("modulus is not lowercase hex")
    dim = _int(fields["dim"], "dim")
    try:
        modulus = Modulus(int(fields["modulus"], 16), _int(fields["hex_len"], "hex_len"))
        params = SchemeParams(dim, fields["hash"], modulus)
    except ValueError as e:
        raise VaultFormatError(str(e)) from None

    coords = lines[i + 1 : -1]
    if len(coords) != dim:
        raise VaultFormatError(f"alpha has {len(coords)} entries, expected {dim}")
    w = modulus.hex_width
    alpha = []
    for c in coords:
        if len(c) != w or not _HEX.fullmatch(c):
            raise VaultFormatError(f"malformed coefficient {c!r} (want {w} lowercase hex digits)")
        v = int(c, 16)
        if v >= modulus.q:
            raise VaultFormatError("coefficient is not reduced modulo q")
        alpha.append(v)
    try:
        return VaultRecord(params, mode, tuple(alpha), fields["app_id"], version)
    except ValueError as e:
        raise VaultFormatError(str(e)) from None


def parse_record(text: str) -> VaultRecord:
    if not text.endswith("\n"):
        raise VaultFormatError("record must end with a newline")
    return _parse_block(text[:-1].split("\n"))


@dataclass(frozen=True)
class VaultFile:
    records: tuple[VaultRecord, ...] = field(default=())
    format_version: int = VAULT_VERSION

    def __post_init__(self) -> None:
        ids = [r.app_id for r in self.records]
        if len(set(ids)) != len(ids):
            raise DuplicateAppError("app_ids must be unique")


def check_app_id(app_id: str) -> str:
    if not _APP_ID.fullmatch(app_id):
        raise ValueError(f"invalid app_id {app_id!r} (allowed: letters, digits, . _ @ + -)")
    return app_id


def vault_put(v: VaultFile, r: VaultRecord, replace: bool = False) -> VaultFile:
    check_app_id(r.app_id)
    ids = vault_list(v)
    if r.app_id in ids:
        if not replace:
            raise DuplicateAppError(f"app {r.app_id!r} already registered")
        return VaultFile(tuple(r if x.app_id == r.app_id else x for x in v.records), v.format_version)
    return VaultFile(v.records + (r,), v.format_version)


def vault_get(v: VaultFile, app_id: str) -> VaultRecord:
    for r in v.records:
        if r.app_id == app_id:
            return r
    raise AppNotFoundError(app_id)


def vault_list(v: VaultFile) -> list[str]:
    return [r.app_id for r in v.records]


def serialize_vault(v: VaultFile) -> str:
    return f"{VAULT_MAGIC} {v.format_version}\n" + "".join(serialize_record(r) for r in v.records)


def parse_vault(text: str) -> VaultFile:
    if not text.endswith("\n"):
        raise VaultFormatError("vault must end with a newline")
    lines = text[:-1].split("\n")
    if lines[0] != f"{VAULT_MAGIC} {VAULT_VERSION}":
        raise VaultFormatError(f"not a version-{VAULT_VERSION} vault: {lines[0]!r}")
    records = []
    block: list[str] = []
    for line in lines[1:]:
        block.append(line)
        if line == "end":
            records.append(_parse_block(block))
            block = []
    if block:
        raise VaultFormatError("truncated record at end of vault")
    try:
        return VaultFile(tuple(records))
    except DuplicateAppError as e:
        raise VaultFormatError(str(e)) from None


def load_vault(path: str | os.PathLike[str]) -> VaultFile:
    try:
        text = Path(path).read_text(encoding="ascii")
    except UnicodeDecodeError:
        raise VaultFormatError(f"{path}: vault files are plain ASCII") from None
    return parse_vault(text)


def save_vault(v: VaultFile, path: str | os.PathLike[str]) -> None:
    """Write atomically: a temp file in the same directory is renamed over ``path``."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent or ".")
    try:
        with os.fdopen(fd, "w", encoding="ascii", newline="\n") as f:
            f.write(serialize_vault(v))
            f.flush()
            os.fsync(f.fileno())
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except FileNotFoundError:
            pass
        raise
