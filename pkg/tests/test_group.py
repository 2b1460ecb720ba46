import random

import pytest

from rlnc_das.errors import DimensionMismatch
from rlnc_das.field import ScalarMatrix, ScalarVector, field_new
from rlnc_das.groups import (
    combine_commitments,
    commit_rows,
    derive_basis,
    pedersen_commit,
    ristretto_group,
    transparent_group,
)

GF17 = field_new(17)
RISTRETTO = ristretto_group()
TRANSPARENT = transparent_group(GF17)
CRYPTO_FIELD = field_new(RISTRETTO.order)

BACKENDS = [
    pytest.param((RISTRETTO, CRYPTO_FIELD), id="ristretto"),
    pytest.param((TRANSPARENT, GF17), id="transparent"),
]


def rand_vec(rnd, field, n):
    return ScalarVector(field, [rnd.randrange(field.modulus) for _ in range(n)])


class TestDeriveBasis:
    @pytest.mark.parametrize("backend", BACKENDS)
    def test_deterministic(self, backend):
        group, _ = backend
        b1 = derive_basis(group, b"g", 4)
        b2 = derive_basis(group, b"g", 4)
        assert [e.encode() for e in b1] == [e.encode() for e in b2]

    @pytest.mark.parametrize("backend", BACKENDS)
    def test_prefix_stable(self, backend):
        group, _ = backend
        short = derive_basis(group, b"g", 3)
        long = derive_basis(group, b"g", 5)
        assert [e.encode() for e in short] == [e.encode() for e in long][:3]

    def test_distinct_labels_distinct_elements(self):
        bg = derive_basis(RISTRETTO, b"g", 2)
        bh = derive_basis(RISTRETTO, b"h", 2)
        for eg, eh in zip(bg, bh):
            assert eg.encode() != eh.encode()

    def test_count_must_be_positive(self):
        with pytest.raises(DimensionMismatch):
            derive_basis(RISTRETTO, b"g", 0)


class TestPedersenCommit:
    @pytest.mark.parametrize("backend", BACKENDS)
    def test_zero_vector_gives_identity(self, backend):
        group, field = backend
        basis = derive_basis(group, b"g", 4)
        assert pedersen_commit(basis, ScalarVector(field, [0] * 4)) == group.identity()

    @pytest.mark.parametrize("backend", BACKENDS)
    def test_unit_vector_selects_generator(self, backend):
        group, field = backend
        basis = derive_basis(group, b"g", 4)
        for j in range(4):
            e = ScalarVector(field, [1 if i == j else 0 for i in range(4)])
            assert pedersen_commit(basis, e) == basis[j]

    @pytest.mark.parametrize("backend", BACKENDS)
    def test_additive_homomorphism(self, backend):
        group, field = backend
        rnd = random.Random(19)
        basis = derive_basis(group, b"g", 6)
        for _ in range(10):
            a, b = rand_vec(rnd, field, 6), rand_vec(rnd, field, 6)
            assert pedersen_commit(basis, a) + pedersen_commit(basis, b) == pedersen_commit(
                basis, a + b
            )

    @pytest.mark.parametrize("backend", BACKENDS)
    def test_scaling_homomorphism(self, backend):
        group, field = backend
        rnd = random.Random(23)
        basis = derive_basis(group, b"g", 5)
        for _ in range(10):
            a, b = rand_vec(rnd, field, 5), rand_vec(rnd, field, 5)
            alpha = rnd.randrange(field.modulus)
            lhs = pedersen_commit(basis, a.scale(alpha) + b)
            rhs = alpha * pedersen_commit(basis, a) + pedersen_commit(basis, b)
            assert lhs == rhs

    def test_length_mismatch(self):
        basis = derive_basis(RISTRETTO, b"g", 2)
        with pytest.raises(DimensionMismatch):
            pedersen_commit(basis, ScalarVector(CRYPTO_FIELD, [1, 2, 3]))


class TestCombineCommitments:
    @pytest.mark.parametrize("backend", BACKENDS)
    def test_unit_weight_selects_commitment(self, backend):
        group, field = backend
        rnd = random.Random(29)
        basis = derive_basis(group, b"g", 5)
        V = ScalarMatrix(field, [[rnd.randrange(field.modulus) for _ in range(5)] for _ in range(3)])
        coms = commit_rows(basis, [V.row(i) for i in range(3)])
        for j in range(3):
            e = ScalarVector(field, [1 if i == j else 0 for i in range(3)])
            assert combine_commitments(e, coms) == coms[j]

    @pytest.mark.parametrize("backend", BACKENDS)
    def test_zero_weights_give_identity(self, backend):
        group, field = backend
        basis = derive_basis(group, b"g", 4)
        coms = commit_rows(basis, [ScalarVector(field, [1, 2, 3, 4])])
        assert combine_commitments(ScalarVector(field, [0]), coms) == group.identity()

    @pytest.mark.parametrize("backend", BACKENDS)
    def test_matches_direct_commitment_of_projected_rows(self, backend):
        group, field = backend
        rnd = random.Random(31)
        q = field.modulus
        basis = derive_basis(group, b"g", 6)
        V = ScalarMatrix(field, [[rnd.randrange(q) for _ in range(6)] for _ in range(4)])
        coms = commit_rows(basis, [V.row(i) for i in range(4)])
        for _ in range(5):
            w = rand_vec(rnd, field, 4)
            # independent path: project the rows first, then commit
            projected = ScalarVector(
                field,
                [sum(w.values[i] * V.data[i][j] for i in range(4)) % q for j in range(6)],
            )
            assert combine_commitments(w, coms) == pedersen_commit(basis, projected)

    def test_weight_count_mismatch(self):
        basis = derive_basis(RISTRETTO, b"g", 2)
        coms = commit_rows(basis, [ScalarVector(CRYPTO_FIELD, [1, 2])])
        with pytest.raises(DimensionMismatch):
            combine_commitments(ScalarVector(CRYPTO_FIELD, [1, 2]), coms)


class TestGroupElementInterface:
    @pytest.mark.parametrize("backend", BACKENDS)
    def test_encode_round_trip(self, backend):
        group, field = backend
        el = derive_basis(group, b"round-trip", 1)[0]
        assert group.decode(el.encode()) == el
        assert len(el.encode()) == group.element_size

    def test_ristretto_element_size_is_32(self):
        assert RISTRETTO.element_size == 32

    def test_transparent_element_size_matches_field(self):
        assert TRANSPARENT.element_size == GF17.byte_width

    @pytest.mark.parametrize("backend", BACKENDS)
    def test_arithmetic_sugar(self, backend):
        group, _ = backend
        g = derive_basis(group, b"sugar", 2)
        assert g[0] + g[1] - g[1] == g[0]
        assert -(-g[0]) == g[0]
        assert 0 * g[0] == group.identity()
        assert 3 * g[0] == g[0] + g[0] + g[0]

    def test_straight_line_commit_oracle(self):
        # recompute a row commitment with a bare loop over g_j * V_ij
        rnd = random.Random(37)
        q = CRYPTO_FIELD.modulus
        basis = derive_basis(RISTRETTO, b"oracle", 8)
        row = [rnd.randrange(q) for _ in range(8)]
        expected = RISTRETTO.identity()
        for j in range(8):
            expected = expected + row[j] * basis[j]
        assert pedersen_commit(basis, ScalarVector(CRYPTO_FIELD, row)) == expected
