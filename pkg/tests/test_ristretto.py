"""Conformance and consistency checks for the ristretto255 backend.

The hex vectors for small multiples of the basepoint are the published
RFC 9496 test vectors; everything else is internal consistency (group
laws, round trips, oracle comparisons).
"""

import random

import pytest

from rlnc_das import ristretto255 as r

# RFC 9496, "Test vectors": encodings of 1B..5B
SMALL_MULTIPLES = [
    "e2f2ae0a6abc4e71a884a961c500515f58e30b6aa582dd8db6a65945e08d2d76",
    "6a493210f7499cd17fecb510ae0cea23a110e8d5b901f8acadd3095c73a3b919",
    "94741f5d5d52755ece4f23f044ee27d5d1ea1e2bd196b462166b16152a9d0259",
    "da80862773358b466ffadfe0b3293ab3d9fd53c5ea6c955358f568322daf6a57",
    "e882b131016b52c1d3337080187cf768423efccbb517bb495ab812c4160ff44e",
]


def test_basepoint_multiples_match_published_vectors():
    acc = r.IDENTITY
    for k, expected in enumerate(SMALL_MULTIPLES, start=1):
        acc = r.pt_add(acc, r.BASEPOINT)
        assert r.encode(acc).hex() == expected, f"{k}B mismatch"
        assert r.pt_eq(acc, r.scalar_mul(k, r.BASEPOINT))


def test_identity_encodes_to_zero_bytes():
    assert r.encode(r.IDENTITY) == bytes(32)
    assert r.pt_eq(r.decode(bytes(32)), r.IDENTITY)


def test_encode_decode_round_trip():
    rnd = random.Random(3)
    for _ in range(20):
        p = r.scalar_mul(rnd.randrange(1, r.ORDER), r.BASEPOINT)
        assert r.pt_eq(r.decode(r.encode(p)), p)


def test_decode_rejects_bad_encodings():
    with pytest.raises(ValueError):
        r.decode(b"\xff" * 32)  # >= p, non-canonical
    with pytest.raises(ValueError):
        r.decode(b"\x01" + bytes(31))  # negative (odd) s
    with pytest.raises(ValueError):
        r.decode(bytes(31))  # wrong length
    # s = 2 is canonical and even but does not hit the curve coset
    candidates = 0
    rejected = 0
    for s in (2, 4, 6, 8, 10):
        candidates += 1
        try:
            r.decode(s.to_bytes(32, "little"))
        except ValueError:
            rejected += 1
    assert rejected > 0  # roughly half of all field values are invalid


def test_group_laws():
    rnd = random.Random(5)
    a = r.scalar_mul(rnd.randrange(r.ORDER), r.BASEPOINT)
    b = r.scalar_mul(rnd.randrange(r.ORDER), r.BASEPOINT)
    c = r.scalar_mul(rnd.randrange(r.ORDER), r.BASEPOINT)
    assert r.pt_eq(r.pt_add(a, b), r.pt_add(b, a))
    assert r.pt_eq(r.pt_add(r.pt_add(a, b), c), r.pt_add(a, r.pt_add(b, c)))
    assert r.pt_eq(r.pt_add(a, r.pt_neg(a)), r.IDENTITY)
    assert r.pt_eq(r.pt_add(a, r.IDENTITY), a)
    assert r.pt_eq(r.pt_double(a), r.pt_add(a, a))


def test_order_annihilates():
    p = r.scalar_mul(987654321, r.BASEPOINT)
    assert r.pt_eq(r.scalar_mul(r.ORDER, p), r.IDENTITY)
    assert r.pt_eq(r.scalar_mul(r.ORDER + 5, p), r.scalar_mul(5, p))


def test_scalar_mul_against_double_and_add_oracle():
    rnd = random.Random(9)
    for _ in range(5):
        k = rnd.randrange(r.ORDER)
        acc = r.IDENTITY
        for bit in bin(k)[2:]:
            acc = r.pt_double(acc)
            if bit == "1":
                acc = r.pt_add(acc, r.BASEPOINT)
        assert r.pt_eq(acc, r.scalar_mul(k, r.BASEPOINT))


def test_msm_against_naive_oracle():
    rnd = random.Random(13)
    for size in (0, 1, 2, 5, 17, 40):
        pts = [r.scalar_mul(rnd.randrange(1, r.ORDER), r.BASEPOINT) for _ in range(size)]
        ks = [rnd.randrange(r.ORDER) for _ in range(size)]
        naive = r.IDENTITY
        for k, p in zip(ks, pts):
            naive = r.pt_add(naive, r.scalar_mul(k, p))
        assert r.pt_eq(r.msm(pts, ks), naive)


def test_one_way_map():
    el = r.from_uniform_bytes(bytes(range(64)))
    assert r.pt_eq(r.decode(r.encode(el)), el)
    assert r.pt_eq(el, r.from_uniform_bytes(bytes(range(64))))  # deterministic
    other = r.from_uniform_bytes(bytes(range(1, 65)))
    assert not r.pt_eq(el, other)
    assert not r.pt_eq(el, r.IDENTITY)
    with pytest.raises(ValueError):
        r.from_uniform_bytes(bytes(32))


def test_equality_matches_encodings():
    rnd = random.Random(17)
    for _ in range(10):
        k = rnd.randrange(1, r.ORDER)
        p1 = r.scalar_mul(k, r.BASEPOINT)
        # a different projective representative of the same element
        p2 = r.pt_add(p1, r.IDENTITY)
        assert r.pt_eq(p1, p2)
        assert r.encode(p1) == r.encode(p2)
        p3 = r.pt_add(p1, r.BASEPOINT)
        assert not r.pt_eq(p1, p3)
        assert r.encode(p1) != r.encode(p3)
