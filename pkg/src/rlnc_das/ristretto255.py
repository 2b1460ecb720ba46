"""ristretto255 group arithmetic in pure Python (RFC 9496).

The group is the prime-order quotient construction over edwards25519:
order L = 2**252 + 27742317777372353535851937790883648493, canonical
32-byte encodings, and a standardized derivation of group elements from
64 uniform bytes (the "one-way map"), which gives transparent,
nothing-up-my-sleeve generators.

Internal representation is extended homogeneous coordinates (X, Y, Z, T)
with x = X/Z, y = Y/Z, xy = T/Z.  Formulas follow RFC 8032 / RFC 9496;
all named curve constants below are re-derived or identity-checked at
import time.  gmpy2 integers are used when available (2-3x faster); the
code is otherwise plain-int.

Not constant-time.  This implementation targets protocol correctness and
byte-exact interop, not side-channel resistance.
"""

from __future__ import annotations

try:
    from gmpy2 import mpz as _mpz
except ImportError:  # pragma: no cover - gmpy2 is an optional accelerator
    def _mpz(x):
        return x

P = 2**255 - 19
ORDER = 2**252 + 27742317777372353535851937790883648493
ENCODED_SIZE = 32

D = -121665 * pow(121666, P - 2, P) % P


def _abs_fe(x: int) -> int:
    # "negative" means the canonical encoding has its low bit set
    return P - x if x & 1 else x


SQRT_M1 = _abs_fe(pow(2, (P - 1) // 4, P))
assert SQRT_M1 * SQRT_M1 % P == P - 1

# Root choices fixed by RFC 9496 (SQRT_AD_MINUS_ONE is the odd root).
SQRT_AD_MINUS_ONE = 25063068953384623474111414158702152701244531502492656460079210482610430750235
assert SQRT_AD_MINUS_ONE**2 % P == (-D - 1) % P

ONE_MINUS_D_SQ = (1 - D * D) % P
D_MINUS_ONE_SQ = (D - 1) ** 2 % P


def _sqrt_ratio_m1(u: int, v: int):
    """Return (was_square, r) with v * r**2 = u when u/v is square,
    else v * r**2 = SQRT_M1 * u; r is the non-negative root."""
    v3 = v * v % P * v % P
    v7 = v3 * v3 % P * v % P
    r = u * v3 % P * pow(u * v7 % P, (P - 5) // 8, P) % P
    check = v * r % P * r % P
    u = u % P
    correct = check == u
    flipped = check == P - u
    flipped_i = check == P - u * SQRT_M1 % P
    if flipped or flipped_i:
        r = r * SQRT_M1 % P
    return (correct or flipped), _abs_fe(r)


INVSQRT_A_MINUS_D = _sqrt_ratio_m1(1, (-1 - D) % P)[1]
assert INVSQRT_A_MINUS_D**2 * ((-1 - D) % P) % P == 1

_Pz = _mpz(P)
_Dz = _mpz(D)
_D2z = _mpz(2 * D % P)

IDENTITY = (_mpz(0), _mpz(1), _mpz(1), _mpz(0))


def _basepoint():
    y = 4 * pow(5, P - 2, P) % P
    xx = (y * y - 1) * pow(D * y * y + 1, P - 2, P) % P
    x = pow(xx, (P + 3) // 8, P)
    if (x * x - xx) % P:
        x = x * SQRT_M1 % P
    if x & 1:
        x = P - x
    return (_mpz(x), _mpz(y), _mpz(1), _mpz(x * y % P))


def pt_add(p, q):
    X1, Y1, Z1, T1 = p
    X2, Y2, Z2, T2 = q
    A = (Y1 - X1) * (Y2 - X2) % _Pz
    B = (Y1 + X1) * (Y2 + X2) % _Pz
    C = T1 * _D2z % _Pz * T2 % _Pz
    Dv = 2 * Z1 * Z2 % _Pz
    E = B - A
    F = Dv - C
    G = Dv + C
    H = B + A
    return (E * F % _Pz, G * H % _Pz, F * G % _Pz, E * H % _Pz)


def pt_double(p):
    X1, Y1, Z1, _ = p
    A = X1 * X1 % _Pz
    B = Y1 * Y1 % _Pz
    C = 2 * Z1 * Z1 % _Pz
    H = A + B
    E = (H - (X1 + Y1) ** 2) % _Pz
    G = A - B
    F = C + G
    return (E * F % _Pz, G * H % _Pz, F * G % _Pz, E * H % _Pz)


def pt_neg(p):
    X, Y, Z, T = p
    return ((-X) % _Pz, Y, Z, (-T) % _Pz)


def pt_eq(p, q) -> bool:
    # Ristretto equality: the coset collapses torsion, RFC 9496 section 4.3.3
    X1, Y1, _, _ = p
    X2, Y2, _, _ = q
    return (X1 * Y2 - Y1 * X2) % _Pz == 0 or (Y1 * Y2 - X1 * X2) % _Pz == 0


def scalar_mul(k: int, p):
    """k * p via a fixed 4-bit window."""
    k = int(k) % ORDER
    if k == 0:
        return IDENTITY
    window = [IDENTITY, p]
    for _ in range(14):
        window.append(pt_add(window[-1], p))
    nibbles = []
    while k:
        nibbles.append(k & 15)
        k >>= 4
    acc = window[nibbles[-1]]
    for nib in reversed(nibbles[:-1]):
        acc = pt_double(pt_double(pt_double(pt_double(acc))))
        if nib:
            acc = pt_add(acc, window[nib])
    return acc


def msm(points, scalars):
    """Multi-scalar multiplication sum(k_i * P_i), Pippenger buckets."""
    pairs = [(int(k) % ORDER, p) for k, p in zip(scalars, points)]
    pairs = [(k, p) for k, p in pairs if k]
    if not pairs:
        return IDENTITY
    if len(pairs) == 1:
        return scalar_mul(pairs[0][0], pairs[0][1])
    n = len(pairs)
    c = 3 if n < 8 else (4 if n < 32 else (5 if n < 128 else 7))
    nbuckets = (1 << c) - 1
    nwindows = (253 + c - 1) // c
    acc = None
    mask = (1 << c) - 1
    for w in range(nwindows - 1, -1, -1):
        if acc is not None:
            for _ in range(c):
                acc = pt_double(acc)
        buckets = [None] * (nbuckets + 1)
        shift = w * c
        for k, p in pairs:
            idx = (k >> shift) & mask
            if idx:
                b = buckets[idx]
                buckets[idx] = p if b is None else pt_add(b, p)
        running = None
        total = None
        for idx in range(nbuckets, 0, -1):
            b = buckets[idx]
            if b is not None:
                running = b if running is None else pt_add(running, b)
            if running is not None:
                total = running if total is None else pt_add(total, running)
        if total is not None:
            acc = total if acc is None else pt_add(acc, total)
    return acc if acc is not None else IDENTITY


def encode(p) -> bytes:
    """Canonical 32-byte encoding (RFC 9496 section 4.3.2)."""
    X, Y, Z, T = (int(v) for v in p)
    u1 = (Z + Y) * (Z - Y) % P
    u2 = X * Y % P
    _, invsqrt = _sqrt_ratio_m1(1, u1 * u2 % P * u2 % P)
    den1 = invsqrt * u1 % P
    den2 = invsqrt * u2 % P
    z_inv = den1 * den2 % P * T % P
    if (T * z_inv % P) & 1:  # rotate
        x = Y * SQRT_M1 % P
        y = X * SQRT_M1 % P
        den_inv = den1 * INVSQRT_A_MINUS_D % P
    else:
        x, y = X, Y
        den_inv = den2
    if (x * z_inv % P) & 1:
        y = P - y
    s = _abs_fe(den_inv * (Z - y) % P)
    return s.to_bytes(32, "little")


def decode(data: bytes):
    """Decode a canonical encoding; raise ValueError if invalid."""
    if len(data) != 32:
        raise ValueError(f"ristretto encoding must be 32 bytes, got {len(data)}")
    s = int.from_bytes(data, "little")
    if s >= P or s & 1:
        raise ValueError("non-canonical ristretto encoding")
    ss = s * s % P
    u1 = (1 - ss) % P
    u2 = (1 + ss) % P
    u2_sqr = u2 * u2 % P
    v = (-(D * u1 % P * u1) - u2_sqr) % P
    ok, invsqrt = _sqrt_ratio_m1(1, v * u2_sqr % P)
    den_x = invsqrt * u2 % P
    den_y = invsqrt * den_x % P * v % P
    x = _abs_fe(2 * s * den_x % P)
    y = u1 * den_y % P
    t = x * y % P
    if not ok or t & 1 or y == 0:
        raise ValueError("invalid ristretto encoding")
    return (_mpz(x), _mpz(y), _mpz(1), _mpz(t))


def _elligator_map(t: int):
    r = SQRT_M1 * t % P * t % P
    u = (r + 1) * ONE_MINUS_D_SQ % P
    v = (-1 - r * D) % P * ((r + D) % P) % P
    was_square, s = _sqrt_ratio_m1(u, v)
    if was_square:
        c = P - 1
    else:
        s = P - _abs_fe(s * t % P)
        c = r
    n = (c * ((r - 1) % P) % P * D_MINUS_ONE_SQ - v) % P
    w0 = 2 * s * v % P
    w1 = n * SQRT_AD_MINUS_ONE % P
    w2 = (1 - s * s) % P
    w3 = (1 + s * s) % P
    return (_mpz(w0 * w3 % P), _mpz(w2 * w1 % P), _mpz(w1 * w3 % P), _mpz(w0 * w2 % P))


def from_uniform_bytes(data: bytes):
    """Derive a group element from 64 uniform bytes (RFC 9496 section 4.3.4)."""
    if len(data) != 64:
        raise ValueError(f"one-way map needs 64 bytes, got {len(data)}")
    mask = (1 << 255) - 1
    t1 = (int.from_bytes(data[:32], "little") & mask) % P
    t2 = (int.from_bytes(data[32:], "little") & mask) % P
    return pt_add(_elligator_map(t1), _elligator_map(t2))


BASEPOINT = _basepoint()
