"""Command-line interface.

Exit codes: 0 success / verified, 1 verification or decode failure,
2 usage or I/O error.  Secrets are prompted without echo, or read one per
line from standard input with ``--stdin``; they never appear in argv.
``--seed`` is only accepted when ``OPW_TEST_MODE=1`` is set.
"""

from __future__ import annotations

import argparse
import getpass
import os
import random
import secrets as _secrets
import sys
from pathlib import Path
from typing import TextIO

from . import attacks
from .field import PRODUCTION_MODULUS, TOY_MODULUS
from .hashchain import SchemeParams
from .scheme import DecodeError, Mode, RegistrationError, encode_secret, register, reveal, verify
from .store import (
    AppNotFoundError,
    DuplicateAppError,
    VaultFile,
    VaultFormatError,
    check_app_id,
    load_vault,
    save_vault,
    vault_get,
    vault_list,
    vault_put,
)

VAULT_ENV = "OPW_VAULT"
TEST_MODE_ENV = "OPW_TEST_MODE"
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

_MODULI = {"toy": TOY_MODULUS, "production": PRODUCTION_MODULUS}


class UsageError(Exception):
    pass


def _test_mode() -> bool:
    return os.environ.get(TEST_MODE_ENV) == "1"


def _build_parser() -> argparse.ArgumentParser:
    vault = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    vault.add_argument("--vault", help=f"vault file (default: ${VAULT_ENV})")
    app = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    app.add_argument("--app", required=True, help="application id")
    stdin = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    stdin.add_argument("--stdin", action="store_true", help="read secrets from stdin, one per line")
    seed = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    if _test_mode():
        seed.add_argument("--seed", type=int, help="deterministic randomness (test mode only)")
    lab = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    lab.add_argument("--dim", type=int, default=100)
    lab.add_argument("--modulus", choices=sorted(_MODULI), default="production")
    lab.add_argument("--format", choices=["text", "csv"], default="text")

    p = argparse.ArgumentParser(prog="opw", description="Hyperplane credential vault", allow_abbrev=False)
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("init", parents=[vault], help="create an empty vault", allow_abbrev=False)
    s.add_argument("--force", action="store_true", help="overwrite an existing vault")

    s = sub.add_parser("register", parents=[vault, app, stdin, seed], help="register secrets", allow_abbrev=False)
    s.add_argument("--dim", type=int, default=100)
    s.add_argument("--mode", choices=["verify", "secret"], default="verify")
    s.add_argument("--count", type=int, default=1, help="number of secrets sharing this record")
    s.add_argument("--replace", action="store_true")

    sub.add_parser("verify", parents=[vault, app, stdin], help="check a secret", allow_abbrev=False)
    sub.add_parser("reveal", parents=[vault, app, stdin], help="decode the stored key", allow_abbrev=False)
    sub.add_parser("list", parents=[vault], help="list applications", allow_abbrev=False)

    s = sub.add_parser("leak-sim", parents=[lab, seed], help="database-collision experiment", allow_abbrev=False)
    s.add_argument("--apps", type=int, required=True, help="applications sharing one secret")

    s = sub.add_parser("estimate", parents=[lab, seed], help="brute-force hit rate", allow_abbrev=False)
    s.add_argument("--samples", type=int, default=100_000)
    return p


class _Secrets:
    def __init__(self, use_stdin: bool, stdin: TextIO) -> None:
        self.use_stdin = use_stdin
        self.stdin = stdin

    def read(self, prompt: str, confirm: bool = False) -> str:
        if self.use_stdin:
            line = self.stdin.readline()
            if not line:
                raise UsageError("unexpected end of input while reading a secret")
            value = line.rstrip("\r\n")
        else:
            value = getpass.getpass(prompt)
            if confirm and getpass.getpass("Repeat: ") != value:
                raise UsageError("entries do not match")
        if not value:
            raise UsageError("empty secret")
        return value


def _vault_path(args: argparse.Namespace) -> Path:
    path = args.vault or os.environ.get(VAULT_ENV)
    if not path:
        raise UsageError(f"no vault given (use --vault or ${VAULT_ENV})")
    return Path(path)


def _rng(args: argparse.Namespace):
    seed = getattr(args, "seed", None)
    return random.Random(seed) if seed is not None else _secrets.SystemRandom()


def _cmd_init(args, io) -> int:
    path = _vault_path(args)
    if path.exists() and not args.force:
        raise UsageError(f"{path} already exists (use --force to overwrite)")
    save_vault(VaultFile(), path)
    io.out.write(f"initialized {path}\n")
    return EXIT_OK


def _cmd_register(args, io) -> int:
    try:
        check_app_id(args.app)
    except ValueError as e:
        raise UsageError(str(e)) from None
    path = _vault_path(args)
    vault = load_vault(path)
    if args.app in vault_list(vault) and not args.replace:
        raise UsageError(f"app {args.app!r} already registered (use --replace)")
    try:
        params = SchemeParams(args.dim)
    except ValueError as e:
        raise UsageError(str(e)) from None
    if not 1 <= args.count < args.dim:
        raise UsageError("--count must satisfy 1 <= count < dim")
    reader = _Secrets(args.stdin, io.stdin)
    secrets = [reader.read(f"Secret {i + 1}: ", confirm=True) for i in range(args.count)]
    constant = None
    if args.mode == "secret":
        key = reader.read("Key to encode: ", confirm=True).encode("utf-8")
        try:
            constant = encode_secret(key, params.modulus)
        except ValueError as e:
            raise UsageError(str(e)) from None
    record = register(secrets, params, constant, rng=_rng(args), app_id=args.app)
    save_vault(vault_put(vault, record, replace=args.replace), path)
    io.out.write(f"registered {args.app} (mode={record.mode.value}, d={params.dimension})\n")
    return EXIT_OK


def _cmd_verify(args, io) -> int:
    record = vault_get(load_vault(_vault_path(args)), args.app)
    if record.mode is not Mode.VERIFY:
        raise UsageError(f"{args.app} is a secret-mode record; use reveal")
    ok = verify(_Secrets(args.stdin, io.stdin).read("Secret: "), record)
    io.out.write("verified\n" if ok else "rejected\n")
    return EXIT_OK if ok else EXIT_FAIL


def _cmd_reveal(args, io) -> int:
    record = vault_get(load_vault(_vault_path(args)), args.app)
    if record.mode is not Mode.SECRET:
        raise UsageError(f"{args.app} is a verify-mode record; use verify")
    try:
        key = reveal(_Secrets(args.stdin, io.stdin).read("Secret: "), record)
    except DecodeError:
        io.err.write("rejected: wrong secret or corrupted record\n")
        return EXIT_FAIL
    io.out.write(key.decode("utf-8", errors="backslashreplace") + "\n")
    return EXIT_OK


def _cmd_list(args, io) -> int:
    for r in load_vault(_vault_path(args)).records:
        io.out.write(f"{r.app_id}\t{r.mode.value}\td={r.params.dimension}\t{r.params.hash_algo}\n")
    return EXIT_OK


def _lab_params(args) -> SchemeParams:
    try:
        return SchemeParams(args.dim, "sha256", _MODULI[args.modulus])
    except ValueError as e:
        raise UsageError(str(e)) from None


def _cmd_leak_sim(args, io) -> int:
    params = _lab_params(args)
    if not 1 <= args.apps:
        raise UsageError("--apps must be >= 1")
    if args.apps >= params.dimension / 2:
        io.err.write(
            f"warning: one secret in {args.apps} apps with d={params.dimension}; "
            f"keep the number of apps well below d\n"
        )
    rng = _rng(args)
    victim = "".join(rng.choice("abcdefghijklmnopqrstuvwxyz0123456789") for _ in range(16))
    steps = attacks.leak_simulation(victim, args.apps, params, rng)
    io.out.write(attacks.format_report(steps, args.format))
    return EXIT_OK


def _cmd_estimate(args, io) -> int:
    params = _lab_params(args)
    if args.samples < 1:
        raise UsageError("--samples must be >= 1")
    rng = _rng(args)
    q = params.modulus.q
    alpha = tuple(rng.randrange(1, q) for _ in range(params.dimension))
    hits = attacks.brute_force_trial(alpha, 1, args.samples, params.modulus, rng)
    expected = args.samples / q
    if args.format == "csv":
        io.out.write("samples,hits,expected,q_bits\n")
        io.out.write(f"{args.samples},{hits},{expected:.6g},{q.bit_length()}\n")
    else:
        io.out.write(f"samples   {args.samples}\nhits      {hits}\nexpected  {expected:.6g}\n")
        io.out.write(f"rate      {hits / args.samples:.6g} (1/q = {1 / q:.6g})\n")
    return EXIT_OK


_COMMANDS = {
    "init": _cmd_init,
    "register": _cmd_register,
    "verify": _cmd_verify,
    "reveal": _cmd_reveal,
    "list": _cmd_list,
    "leak-sim": _cmd_leak_sim,
    "estimate": _cmd_estimate,
}


class _IO:
    def __init__(self, stdin: TextIO, out: TextIO, err: TextIO) -> None:
        self.stdin, self.out, self.err = stdin, out, err


def run(argv: list[str] | None = None, stdin: TextIO | None = None,
        stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    io = _IO(stdin or sys.stdin, stdout or sys.stdout, stderr or sys.stderr)
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    try:
        return _COMMANDS[args.verb](args, io)
    except AppNotFoundError as e:
        io.err.write(f"error: no application {e.args[0]!r} in vault\n")
    except (UsageError, VaultFormatError, DuplicateAppError, RegistrationError) as e:
        io.err.write(f"error: {e}\n")
    except OSError as e:
        io.err.write(f"error: {e.strerror or e}: {e.filename or ''}\n")
    return EXIT_USAGE


def main() -> None:
    sys.exit(run())
