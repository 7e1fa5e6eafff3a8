import math
import random
import statistics

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from opw.field import PRODUCTION_MODULUS, TOY_MODULUS, Modulus
from opw.hashchain import SchemeParams, hash_chain
from opw.linalg import dot_product
from opw.scheme import (
    MAX_SECRET_BYTES,
    DecodeError,
    Mode,
    ModeMismatchError,
    RegistrationError,
    VaultRecord,
    decode_secret,
    encode_secret,
    fit_hyperplane,
    generate_aux_points,
    register,
    reveal,
    verify,
)

Q7 = Modulus(7)
P5 = SchemeParams(5)


def test_register_then_verify(rng):
    r = register(["correct horse"], P5, rng=rng)
    assert r.mode is Mode.VERIFY
    assert verify("correct horse", r)
    assert not verify("wrong-password", r)


def test_multiple_secrets_share_one_record(rng):
    r = register(["a", "b"], P5, rng=rng)
    assert verify("a", r)
    assert verify("b", r)
    assert not verify("c", r)


def test_independent_registrations_differ():
    p = SchemeParams(5, "sha256", TOY_MODULUS)
    a = register(["hunter2"], p, rng=random.Random(1))
    b = register(["hunter2"], p, rng=random.Random(2))
    assert a.alpha != b.alpha
    assert verify("hunter2", a) and verify("hunter2", b)


def test_same_seed_same_record():
    a = register(["hunter2"], P5, rng=random.Random(3))
    b = register(["hunter2"], P5, rng=random.Random(3))
    assert a == b


@pytest.mark.parametrize(
    "secrets, kwargs",
    [
        (["a"] * 2, {}),
        ([f"s{i}" for i in range(5)], {}),
        ([], {}),
        (["a"], {"constant": PRODUCTION_MODULUS(0)}),
        (["a"], {"constant": TOY_MODULUS(5)}),
    ],
)
def test_register_errors(secrets, kwargs, rng):
    with pytest.raises(RegistrationError):
        register(secrets, P5, rng=rng, **kwargs)


def test_redraw_limit():
    class Zeros:
        def randrange(self, stop):
            return 0

    with pytest.raises(RegistrationError, match="redraws"):
        register(["a"], P5, rng=Zeros())


def test_every_row_lies_on_hyperplane(rng):
    # the "fake keys": auxiliary points satisfy the equation too
    class Recording(random.Random):
        def __init__(self, seed):
            super().__init__(seed)
            self.draws = []

        def randrange(self, stop):
            x = super().randrange(stop)
            self.draws.append(x)
            return x

    p = SchemeParams(6)
    rec = Recording(9)
    c = encode_secret(b"k")
    r = register(["x", "y"], p, c, rng=rec)
    d = p.dimension
    aux = [rec.draws[i * d : (i + 1) * d] for i in range(d - 2)]
    for row in [hash_chain("x", p), hash_chain("y", p), *aux]:
        assert dot_product(r.alpha, row, p.modulus) == c.value


def test_singular_draws_are_redrawn_at_q7():
    # at q=7, d=3 a random 3x3 matrix is singular ~ 1/7 + 1/49 + ... of the time
    from opw.linalg import mat_determinant

    class Counting(random.Random):
        calls = 0

        def randrange(self, stop):
            Counting.calls += 1
            return super().randrange(stop)

    redraws = 0
    for seed in range(300):
        Counting.calls = 0
        alpha = fit_hyperplane([(1, 2, 3)], 1, 3, Q7, Counting(seed))
        draws = Counting.calls // 6
        redraws += draws - 1
        assert dot_product(alpha, (1, 2, 3), Q7) == 1
    assert redraws > 0
    # the redraw loop terminated every time; compare rate with d/q bound
    assert redraws / 300 < 3 / 7
    assert mat_determinant([[1, 2, 3], [2, 4, 6], [0, 0, 1]], Q7) == Q7(0)


def test_generate_aux_points():
    assert generate_aux_points(2, 3, Q7, random.Random(1)) == generate_aux_points(2, 3, Q7, random.Random(1))
    with pytest.raises(ValueError):
        generate_aux_points(0, 3, Q7)
    pts = generate_aux_points(3, 4, PRODUCTION_MODULUS)
    assert len(pts) == 3 and all(len(p) == 4 for p in pts)


def test_aux_points_uniform_mean():
    q = 10007
    n = 100_000
    pts = generate_aux_points(n // 10, 10, Modulus(q), random.Random(11))
    mean = statistics.fmean(x for p in pts for x in p)
    sigma = math.sqrt((q * q - 1) / 12 / n)
    assert abs(mean - (q - 1) / 2) < 3 * sigma


def test_verify_mode_mismatch(rng):
    r = register(["pw"], P5, encode_secret(b"key"), rng=rng)
    with pytest.raises(ModeMismatchError):
        verify("pw", r)
    v = register(["pw"], P5, rng=rng)
    with pytest.raises(ModeMismatchError):
        reveal("pw", v)


def test_verify_rejects_random_candidates(rng):
    r = register(["correct horse"], SchemeParams(8), rng=rng)
    assert not any(verify(f"guess-{i}", r) for i in range(2000))


def test_reveal_round_trip(rng):
    r = register(["pw"], P5, encode_secret(b"open sesame"), rng=rng)
    assert r.mode is Mode.SECRET
    assert reveal("pw", r) == b"open sesame"
    with pytest.raises(DecodeError):
        reveal("not pw", r)


def test_encode_examples():
    assert decode_secret(encode_secret(b"key")) == b"key"
    assert decode_secret(encode_secret(b"hello")) == b"hello"
    assert encode_secret(b"").value != 0
    assert decode_secret(encode_secret(b"")) == b""
    assert decode_secret(encode_secret(b"\x00" * MAX_SECRET_BYTES)) == b"\x00" * MAX_SECRET_BYTES
    with pytest.raises(ValueError):
        encode_secret(b"x" * 27)
    with pytest.raises(ValueError):
        encode_secret(b"k", TOY_MODULUS)


def test_encode_layout():
    import zlib

    c = encode_secret(b"ab").value
    head = b"\x01\x02ab"
    assert c.to_bytes(8, "big") == head + zlib.crc32(head).to_bytes(4, "big")


def test_decode_failures():
    with pytest.raises(DecodeError):
        decode_secret(0)
    with pytest.raises(DecodeError):
        decode_secret(PRODUCTION_MODULUS.q - 1)  # >= 2**256
    r = random.Random(4)
    spurious = 0
    for _ in range(10_000):
        try:
            decode_secret(PRODUCTION_MODULUS(r.randrange(PRODUCTION_MODULUS.q)))
            spurious += 1
        except DecodeError:
            pass
    assert spurious == 0


@given(st.binary(max_size=MAX_SECRET_BYTES))
def test_encode_decode_property(s):
    c = encode_secret(s)
    assert 0 < c.value < 2**256
    assert decode_secret(c) == s


@given(st.text(min_size=1, max_size=20), st.integers(2, 8), st.integers(0, 2**32))
@settings(max_examples=50, deadline=None)
def test_verify_deterministic_and_sound(secret, d, seed):
    r = register([secret], SchemeParams(d), rng=random.Random(seed))
    assert verify(secret, r) and verify(secret, r)
    assert not verify(secret + "!", r)


def test_record_validation():
    with pytest.raises(ValueError):
        VaultRecord(P5, Mode.VERIFY, (0,) * 5)
    with pytest.raises(ValueError):
        VaultRecord(P5, Mode.VERIFY, (1,) * 4)
    with pytest.raises(ValueError):
        VaultRecord(P5, Mode.VERIFY, (PRODUCTION_MODULUS.q,) * 5)
