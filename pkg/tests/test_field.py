import random

import pytest

from rlnc_das.errors import (
    DimensionMismatch,
    FieldMismatch,
    NonPrimeModulus,
    SingularMatrix,
)
from rlnc_das.field import (
    RISTRETTO255_ORDER,
    FieldParams,
    Scalar,
    ScalarMatrix,
    ScalarVector,
    field_new,
    mat_vec_mul,
    rank,
    solve,
)

GF17 = field_new(17)
GF7 = field_new(7)
GF5 = field_new(5)
CRYPTO = field_new(RISTRETTO255_ORDER)


def random_matrix(rnd, field, m, n):
    return ScalarMatrix(field, [[rnd.randrange(field.modulus) for _ in range(n)] for _ in range(m)])


def random_vector(rnd, field, n):
    return ScalarVector(field, [rnd.randrange(field.modulus) for _ in range(n)])


class TestFieldNew:
    def test_small_prime(self):
        fld = field_new(17)
        assert fld.modulus == 17
        assert fld.byte_width == 1

    def test_composite_rejected(self):
        with pytest.raises(NonPrimeModulus):
            field_new(16)

    def test_named_crypto_modulus(self):
        fld = field_new(RISTRETTO255_ORDER)
        assert fld.byte_width == 32

    def test_medium_primes(self):
        assert field_new(257).byte_width == 2
        assert field_new(65537).byte_width == 3
        assert field_new(2**31 - 1).modulus == 2**31 - 1

    def test_large_unregistered_rejected(self):
        with pytest.raises(NonPrimeModulus):
            field_new(2**89 - 1)  # prime, but not in the registry

    def test_too_small(self):
        with pytest.raises(NonPrimeModulus):
            field_new(1)


class TestScalarLaws:
    @pytest.mark.parametrize("field", [GF17, CRYPTO], ids=["gf17", "crypto"])
    def test_ring_laws_random_triples(self, field):
        rnd = random.Random(101)
        q = field.modulus
        for _ in range(200):
            a, b, c = (Scalar(rnd.randrange(q), field) for _ in range(3))
            assert (a + b) + c == a + (b + c)
            assert a * (b + c) == a * b + a * c
            assert a + (-a) == Scalar(0, field)
            if a.value:
                assert a * a.inv() == Scalar(1, field)

    def test_field_mismatch(self):
        with pytest.raises(FieldMismatch):
            Scalar(1, GF17) + Scalar(1, GF7)


class TestMatVecMul:
    def test_column_sum_example(self):
        V = ScalarMatrix(GF7, [[1, 2], [3, 4]])
        assert mat_vec_mul(V, ScalarVector(GF7, [1, 1])).values == [3, 0]

    def test_unit_vector_selects_column(self):
        rnd = random.Random(7)
        V = random_matrix(rnd, GF17, 5, 4)
        for i in range(4):
            e = ScalarVector(GF17, [1 if j == i else 0 for j in range(4)])
            assert mat_vec_mul(V, e).values == V.col(i).values

    def test_against_schoolbook_oracle(self):
        rnd = random.Random(11)
        V = random_matrix(rnd, GF17, 4, 5)
        c = random_vector(rnd, GF17, 5)
        # independent schoolbook evaluation
        expected = []
        for j in range(4):
            acc = 0
            for i in range(5):
                acc = (acc + V.data[j][i] * c.values[i]) % 17
            expected.append(acc)
        assert mat_vec_mul(V, c).values == expected

    def test_linearity(self):
        rnd = random.Random(13)
        V = random_matrix(rnd, GF17, 3, 6)
        c1, c2 = random_vector(rnd, GF17, 6), random_vector(rnd, GF17, 6)
        alpha, beta = rnd.randrange(1, 17), rnd.randrange(1, 17)
        combo = c1.scale(alpha) + c2.scale(beta)
        lhs = mat_vec_mul(V, combo)
        rhs = mat_vec_mul(V, c1).scale(alpha) + mat_vec_mul(V, c2).scale(beta)
        assert lhs == rhs

    def test_dimension_mismatch(self):
        V = ScalarMatrix(GF7, [[1, 2], [3, 4]])
        with pytest.raises(DimensionMismatch):
            mat_vec_mul(V, ScalarVector(GF7, [1, 2, 3]))

    def test_field_mismatch(self):
        V = ScalarMatrix(GF7, [[1, 2], [3, 4]])
        with pytest.raises(FieldMismatch):
            mat_vec_mul(V, ScalarVector(GF17, [1, 2]))


def span_size_rank_oracle(M: ScalarMatrix) -> int:
    """Rank via brute-force row-space enumeration: |span| = q**rank."""
    q = M.field.modulus
    span = set()
    coeffs = [0] * M.rows

    def rec(i):
        if i == M.rows:
            vec = tuple(
                sum(coeffs[r] * M.data[r][c] for r in range(M.rows)) % q
                for c in range(M.cols)
            )
            span.add(vec)
            return
        for v in range(q):
            coeffs[i] = v
            rec(i + 1)

    rec(0)
    size = len(span)
    r = 0
    while q**r < size:
        r += 1
    assert q**r == size
    return r


class TestRank:
    def test_zero_matrix(self):
        assert rank(ScalarMatrix.zeros(GF17, 3, 5)) == 0

    def test_identity(self):
        assert rank(ScalarMatrix.identity(GF17, 6)) == 6

    def test_against_span_enumeration(self):
        rnd = random.Random(23)
        for _ in range(10):
            M = random_matrix(rnd, GF5, 3, 8)
            assert rank(M) == span_size_rank_oracle(M)

    def test_transpose_invariant(self):
        rnd = random.Random(29)
        for _ in range(20):
            M = random_matrix(rnd, GF17, 4, 6)
            assert rank(M) == rank(M.transpose())

    def test_row_ops_invariant(self):
        rnd = random.Random(31)
        M = random_matrix(rnd, GF17, 4, 5)
        r0 = rank(M)
        swapped = ScalarMatrix(GF17, [M.data[1], M.data[0]] + M.data[2:])
        assert rank(swapped) == r0
        scaled = ScalarMatrix(GF17, [[5 * v % 17 for v in M.data[0]]] + M.data[1:])
        assert rank(scaled) == r0


class TestSolve:
    def test_identity_system(self):
        B = ScalarMatrix(GF17, [[3, 1], [4, 1], [5, 9]])
        assert solve(ScalarMatrix.identity(GF17, 3), B) == B

    def test_diagonal_example(self):
        A = ScalarMatrix(GF7, [[2, 0], [0, 3]])
        B = ScalarMatrix(GF7, [[4], [3]])
        assert solve(A, B).data == [[2], [1]]

    def test_multiply_back(self):
        rnd = random.Random(37)
        while True:
            A = random_matrix(rnd, GF17, 6, 6)
            if rank(A) == 6:
                break
        B = random_matrix(rnd, GF17, 6, 3)
        X = solve(A, B)
        product = ScalarMatrix(
            GF17,
            [
                [sum(A.data[i][k] * X.data[k][j] for k in range(6)) % 17 for j in range(3)]
                for i in range(6)
            ],
        )
        assert product == B

    def test_round_trip_random_solution(self):
        rnd = random.Random(41)
        while True:
            A = random_matrix(rnd, GF17, 5, 5)
            if rank(A) == 5:
                break
        X0 = random_matrix(rnd, GF17, 5, 2)
        B = ScalarMatrix(
            GF17,
            [
                [sum(A.data[i][k] * X0.data[k][j] for k in range(5)) % 17 for j in range(2)]
                for i in range(5)
            ],
        )
        assert solve(A, B) == X0

    def test_singular(self):
        A = ScalarMatrix(GF17, [[1, 2], [2, 4]])
        with pytest.raises(SingularMatrix):
            solve(A, ScalarMatrix(GF17, [[1], [1]]))

    def test_non_square(self):
        with pytest.raises(DimensionMismatch):
            solve(ScalarMatrix.zeros(GF17, 2, 3), ScalarMatrix.zeros(GF17, 2, 1))


class TestSerialization:
    @pytest.mark.parametrize("field", [GF17, field_new(257), CRYPTO], ids=["gf17", "gf257", "crypto"])
    def test_vector_round_trip(self, field):
        rnd = random.Random(43)
        v = random_vector(rnd, field, 9)
        assert ScalarVector.decode(field, v.encode()) == v

    def test_matrix_round_trip(self):
        rnd = random.Random(47)
        M = random_matrix(rnd, GF17, 3, 4)
        assert ScalarMatrix.decode(GF17, M.encode()) == M

    def test_scalar_fixed_width_little_endian(self):
        fld = field_new(257)
        assert fld.encode_scalar(256) == b"\x00\x01"
        assert fld.decode_scalar(b"\x00\x01") == 256

    def test_non_canonical_rejected(self):
        with pytest.raises(ValueError):
            GF17.decode_scalar(b"\x11")  # 17 >= q

    def test_truncated_vector_rejected(self):
        v = random_vector(random.Random(1), GF17, 4)
        with pytest.raises(DimensionMismatch):
            ScalarVector.decode(GF17, v.encode()[:-1])
