from rlnc_das.field import field_new
from rlnc_das.transcript import Transcript

GF17 = field_new(17)
GF257 = field_new(257)


def test_identical_absorbs_identical_challenges():
    t1, t2 = Transcript(b"dom"), Transcript(b"dom")
    for t in (t1, t2):
        t.absorb(b"a", b"hello")
        t.absorb_int(b"b", 42)
    assert t1.challenge_scalar(b"x", GF257) == t2.challenge_scalar(b"x", GF257)
    # and they stay in sync afterwards
    assert t1.challenge_scalar(b"y", GF257) == t2.challenge_scalar(b"y", GF257)


def test_single_byte_divergence():
    t1, t2 = Transcript(b"dom"), Transcript(b"dom")
    t1.absorb(b"a", b"hello")
    t2.absorb(b"a", b"hellp")
    c1 = [t1.challenge_scalar(b"x", GF257) for _ in range(4)]
    c2 = [t2.challenge_scalar(b"x", GF257) for _ in range(4)]
    assert c1 != c2


def test_domain_separation():
    assert Transcript(b"d1").challenge_scalar(b"x", GF257) != Transcript(
        b"d2"
    ).challenge_scalar(b"x", GF257)


def test_label_framing_is_unambiguous():
    t1, t2 = Transcript(b"dom"), Transcript(b"dom")
    t1.absorb(b"ab", b"c")
    t2.absorb(b"a", b"bc")
    assert t1.challenge_scalar(b"x", GF257) != t2.challenge_scalar(b"x", GF257)


def test_successive_challenges_differ():
    t = Transcript(b"dom")
    values = [t.challenge_scalar(b"x", GF257) for _ in range(10)]
    assert len(set(values)) > 1


def test_challenge_ranges():
    t = Transcript(b"range")
    for _ in range(200):
        v = t.challenge_scalar(b"x", GF17)
        assert 1 <= v < 17
    seen_zero = False
    for _ in range(200):
        v = t.challenge_scalar(b"y", GF17, nonzero=False)
        assert 0 <= v < 17
        seen_zero |= v == 0
    assert seen_zero  # ~11 expected in 200 draws


def test_challenge_vector_length_and_range():
    t = Transcript(b"vec")
    vals = t.challenge_vector(b"v", GF17, 50)
    assert len(vals) == 50
    assert all(0 <= v < 17 for v in vals)


def test_clone_forks_state():
    t = Transcript(b"dom")
    t.absorb(b"a", b"data")
    fork = t.clone()
    assert fork.challenge_scalar(b"x", GF257) == t.challenge_scalar(b"x", GF257)
    fork.absorb(b"extra", b"1")
    assert fork.challenge_scalar(b"x", GF257) != t.challenge_scalar(b"x", GF257)


def test_challenge_bytes_length():
    t = Transcript(b"bytes")
    assert len(t.challenge_bytes(b"x", 5)) == 5
    assert len(t.challenge_bytes(b"x", 100)) == 100
