"""RLNC encoding and a streaming rank-tracking decoder.

Encoding a data matrix V with a coefficient vector c is just V @ c; the
decoder accumulates (coefficients, payload) pairs in reduced row-echelon
form, so rank is tracked incrementally, redundant samples are discarded
for free, and once rank reaches n the coefficient rows are unit vectors
and V can be read off column by column.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionMismatch, FieldMismatch, InconsistentSamples, InsufficientRank
from .field import FieldParams, ScalarMatrix, ScalarVector, mat_vec_mul


@dataclass
class CodedSample:
    """A challenge coefficient vector with its claimed coded payload."""

    coeffs: ScalarVector
    payload: ScalarVector

    def encode(self) -> bytes:
        return self.coeffs.encode() + self.payload.encode()

    @classmethod
    def decode(cls, field: FieldParams, data: bytes) -> "CodedSample":
        if len(data) < 4:
            raise DimensionMismatch("sample encoding shorter than its header")
        n = int.from_bytes(data[:4], "little")
        split = 4 + n * field.byte_width
        return cls(
            ScalarVector.decode(field, data[:split]),
            ScalarVector.decode(field, data[split:]),
        )


def rlnc_encode(V: ScalarMatrix, c: ScalarVector) -> ScalarVector:
    """The coded vector V @ c — the on-demand sampling operation."""
    return mat_vec_mul(V, c)


@dataclass
class AddResult:
    rank_increased: bool
    new_rank: int
    inconsistent: bool = False


class DecoderState:
    """Accumulates coded samples for an m x n matrix until decodable."""

    def __init__(self, field: FieldParams, n: int, m: int):
        self.field = field
        self.n = n
        self.m = m
        # rows kept in RREF over coeffs: parallel lists of pivot column,
        # reduced coefficient row, and correspondingly reduced payload
        self._pivots: list[int] = []
        self._coeff_rows: list[list[int]] = []
        self._payload_rows: list[list[int]] = []
        self.inconsistent_seen = 0

    @property
    def current_rank(self) -> int:
        return len(self._pivots)

    @property
    def decodable(self) -> bool:
        return self.current_rank == self.n

    def add(self, sample: CodedSample) -> AddResult:
        """Reduce a sample into the echelon state.

        Returns whether rank grew.  A dependent sample whose payload
        disagrees with the payload implied by the stored rows is flagged
        (and counted) rather than raised, so adversary experiments can
        observe it.
        """
        if sample.coeffs.field.modulus != self.field.modulus:
            raise FieldMismatch(f"{sample.coeffs.field} vs {self.field}")
        if len(sample.coeffs) != self.n or len(sample.payload) != self.m:
            raise DimensionMismatch(
                f"sample dims ({len(sample.coeffs)}, {len(sample.payload)}) "
                f"vs decoder ({self.n}, {self.m})"
            )
        q = self.field.modulus
        c = list(sample.coeffs.values)
        w = list(sample.payload.values)
        for piv, crow, wrow in zip(self._pivots, self._coeff_rows, self._payload_rows):
            f = c[piv]
            if f:
                c = [(a - f * b) % q for a, b in zip(c, crow)]
                w = [(a - f * b) % q for a, b in zip(w, wrow)]
        pivot = next((j for j, v in enumerate(c) if v), None)
        if pivot is None:
            if any(w):
                self.inconsistent_seen += 1
                return AddResult(False, self.current_rank, inconsistent=True)
            return AddResult(False, self.current_rank)
        inv = pow(c[pivot], q - 2, q)
        c = [inv * v % q for v in c]
        w = [inv * v % q for v in w]
        # keep existing rows reduced against the new pivot (full RREF)
        for i in range(len(self._pivots)):
            f = self._coeff_rows[i][pivot]
            if f:
                self._coeff_rows[i] = [
                    (a - f * b) % q for a, b in zip(self._coeff_rows[i], c)
                ]
                self._payload_rows[i] = [
                    (a - f * b) % q for a, b in zip(self._payload_rows[i], w)
                ]
        idx = next((i for i, p in enumerate(self._pivots) if p > pivot), len(self._pivots))
        self._pivots.insert(idx, pivot)
        self._coeff_rows.insert(idx, c)
        self._payload_rows.insert(idx, w)
        return AddResult(True, self.current_rank)

    def reconstruct(self) -> ScalarMatrix:
        """Return the unique V consistent with all accepted samples."""
        if self.current_rank < self.n:
            raise InsufficientRank(self.current_rank, self.n)
        if self.inconsistent_seen:
            raise InconsistentSamples(
                f"{self.inconsistent_seen} dependent sample(s) contradicted the stored rows"
            )
        # at full rank the RREF coefficient rows are e_0..e_{n-1}, so the
        # payload row with pivot j is exactly column j of V
        cols = [None] * self.n
        for piv, wrow in zip(self._pivots, self._payload_rows):
            cols[piv] = wrow
        return ScalarMatrix(
            self.field, [[cols[j][i] for j in range(self.n)] for i in range(self.m)]
        )


def decoder_add(state: DecoderState, sample: CodedSample) -> AddResult:
    return state.add(sample)


def decoder_reconstruct(state: DecoderState) -> ScalarMatrix:
    return state.reconstruct()
