"""Prime-field scalar arithmetic and dense linear algebra over GF(q).

The field modulus is chosen at runtime: small primes (17, 257, 65537) are
convenient for statistical experiments, while the scalar field of the
commitment group drives the actual protocol.  Vectors and matrices store
canonical integer representatives and all operations are pure functions.

Wire format: a scalar occupies ``byte_width`` little-endian bytes; vectors
carry a 4-byte little-endian length header, matrices two such headers
(rows, cols) followed by row-major packed scalars.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import (
    DimensionMismatch,
    FieldMismatch,
    NonPrimeModulus,
    SingularMatrix,
)

# Order of the ristretto255 group; the one modulus above 2**64 accepted
# without a primality proof (standard named parameter).
RISTRETTO255_ORDER = 2**252 + 27742317777372353535851937790883648493

_CRYPTO_MODULI = frozenset({RISTRETTO255_ORDER})

# Witnesses proving Miller-Rabin deterministic for n < 3.3 * 10**24,
# which covers every modulus below 2**64.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime_u64(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldParams:
    """GF(q) description: prime modulus and fixed-width encoding size."""

    modulus: int
    byte_width: int = dc_field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "byte_width", ((self.modulus - 1).bit_length() + 7) // 8 or 1)

    @property
    def cardinality(self) -> int:
        return self.modulus

    def reduce(self, value: int) -> int:
        return value % self.modulus

    def inv(self, value: int) -> int:
        if value % self.modulus == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(value, self.modulus - 2, self.modulus)

    def scalar(self, value: int) -> "Scalar":
        return Scalar(value % self.modulus, self)

    def encode_scalar(self, value: int) -> bytes:
        return (value % self.modulus).to_bytes(self.byte_width, "little")

    def decode_scalar(self, data: bytes) -> int:
        if len(data) != self.byte_width:
            raise DimensionMismatch(
                f"scalar encoding needs {self.byte_width} bytes, got {len(data)}"
            )
        v = int.from_bytes(data, "little")
        if v >= self.modulus:
            raise ValueError(f"non-canonical scalar {v} >= {self.modulus}")
        return v

    def __repr__(self):
        return f"FieldParams(q={self.modulus})"


def field_new(modulus: int) -> FieldParams:
    """Construct GF(modulus), certifying primality.

    Moduli below 2**64 go through a deterministic Miller-Rabin test;
    larger values are accepted only from the registry of named
    cryptographic moduli (the commitment group order), since certifying
    arbitrary big primes is out of scope here.
    """
    if modulus < 2:
        raise NonPrimeModulus(f"{modulus} < 2")
    if modulus in _CRYPTO_MODULI:
        return FieldParams(modulus)
    if modulus >= 2**64:
        raise NonPrimeModulus(
            f"{modulus} is not a registered cryptographic modulus and is too "
            "large for the deterministic primality check"
        )
    if not _is_prime_u64(modulus):
        raise NonPrimeModulus(f"{modulus} is composite")
    return FieldParams(modulus)


@dataclass(frozen=True)
class Scalar:
    """Canonical representative of a field element, with operator sugar."""

    value: int
    params: FieldParams

    def __post_init__(self):
        if not 0 <= self.value < self.params.modulus:
            object.__setattr__(self, "value", self.value % self.params.modulus)

    def _coerce(self, other) -> int:
        if isinstance(other, Scalar):
            if other.params.modulus != self.params.modulus:
                raise FieldMismatch(f"{other.params} vs {self.params}")
            return other.value
        return int(other) % self.params.modulus

    def __add__(self, other):
        return Scalar((self.value + self._coerce(other)) % self.params.modulus, self.params)

    def __sub__(self, other):
        return Scalar((self.value - self._coerce(other)) % self.params.modulus, self.params)

    def __mul__(self, other):
        return Scalar(self.value * self._coerce(other) % self.params.modulus, self.params)

    __radd__ = __add__
    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(-self.value % self.params.modulus, self.params)

    def inv(self) -> "Scalar":
        return Scalar(self.params.inv(self.value), self.params)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.params.modulus == other.params.modulus and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.params.modulus
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.params.modulus))

    def __repr__(self):
        return f"{self.value} (mod {self.params.modulus})"


class ScalarVector:
    """Fixed-length vector of field elements, stored as canonical ints."""

    __slots__ = ("field", "values")

    def __init__(self, field: FieldParams, values):
        self.field = field
        q = field.modulus
        self.values = [int(v) % q for v in values]

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __eq__(self, other):
        return (
            isinstance(other, ScalarVector)
            and self.field.modulus == other.field.modulus
            and self.values == other.values
        )

    def __repr__(self):
        return f"ScalarVector({self.values!r} mod {self.field.modulus})"

    def _check(self, other: "ScalarVector"):
        if self.field.modulus != other.field.modulus:
            raise FieldMismatch(f"{self.field} vs {other.field}")
        if len(self) != len(other):
            raise DimensionMismatch(f"length {len(self)} vs {len(other)}")

    def __add__(self, other: "ScalarVector") -> "ScalarVector":
        self._check(other)
        q = self.field.modulus
        return ScalarVector(self.field, [(a + b) % q for a, b in zip(self.values, other.values)])

    def __sub__(self, other: "ScalarVector") -> "ScalarVector":
        self._check(other)
        q = self.field.modulus
        return ScalarVector(self.field, [(a - b) % q for a, b in zip(self.values, other.values)])

    def scale(self, k: int) -> "ScalarVector":
        q = self.field.modulus
        k = int(k) % q
        return ScalarVector(self.field, [k * a % q for a in self.values])

    def dot(self, other: "ScalarVector") -> int:
        self._check(other)
        return sum(a * b for a, b in zip(self.values, other.values)) % self.field.modulus

    def is_zero(self) -> bool:
        return not any(self.values)

    def encode(self) -> bytes:
        out = bytearray(len(self.values).to_bytes(4, "little"))
        w, q = self.field.byte_width, self.field.modulus
        for v in self.values:
            out += (v % q).to_bytes(w, "little")
        return bytes(out)

    @classmethod
    def decode(cls, field: FieldParams, data: bytes) -> "ScalarVector":
        if len(data) < 4:
            raise DimensionMismatch("vector encoding shorter than its header")
        n = int.from_bytes(data[:4], "little")
        w = field.byte_width
        if len(data) != 4 + n * w:
            raise DimensionMismatch(f"vector body {len(data) - 4} bytes, expected {n * w}")
        return cls(
            field,
            [field.decode_scalar(data[4 + i * w : 4 + (i + 1) * w]) for i in range(n)],
        )


class ScalarMatrix:
    """Row-major m x n matrix over one field."""

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field: FieldParams, rows_of_values):
        self.field = field
        q = field.modulus
        self.data = [[int(v) % q for v in row] for row in rows_of_values]
        self.rows = len(self.data)
        self.cols = len(self.data[0]) if self.data else 0
        if any(len(r) != self.cols for r in self.data):
            raise DimensionMismatch("ragged rows")

    @classmethod
    def zeros(cls, field: FieldParams, rows: int, cols: int) -> "ScalarMatrix":
        return cls(field, [[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, field: FieldParams, n: int) -> "ScalarMatrix":
        return cls(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def row(self, i: int) -> ScalarVector:
        return ScalarVector(self.field, self.data[i])

    def col(self, j: int) -> ScalarVector:
        return ScalarVector(self.field, [r[j] for r in self.data])

    def transpose(self) -> "ScalarMatrix":
        return ScalarMatrix(self.field, list(map(list, zip(*self.data))) if self.data else [])

    def __eq__(self, other):
        return (
            isinstance(other, ScalarMatrix)
            and self.field.modulus == other.field.modulus
            and self.data == other.data
        )

    def __repr__(self):
        return f"ScalarMatrix({self.rows}x{self.cols} mod {self.field.modulus})"

    def encode(self) -> bytes:
        out = bytearray(self.rows.to_bytes(4, "little") + self.cols.to_bytes(4, "little"))
        w, q = self.field.byte_width, self.field.modulus
        for row in self.data:
            for v in row:
                out += (v % q).to_bytes(w, "little")
        return bytes(out)

    @classmethod
    def decode(cls, field: FieldParams, data: bytes) -> "ScalarMatrix":
        if len(data) < 8:
            raise DimensionMismatch("matrix encoding shorter than its headers")
        m = int.from_bytes(data[:4], "little")
        n = int.from_bytes(data[4:8], "little")
        w = field.byte_width
        if len(data) != 8 + m * n * w:
            raise DimensionMismatch(f"matrix body {len(data) - 8} bytes, expected {m * n * w}")
        vals = [
            field.decode_scalar(data[8 + k * w : 8 + (k + 1) * w]) for k in range(m * n)
        ]
        return cls(field, [vals[i * n : (i + 1) * n] for i in range(m)])


def mat_vec_mul(V: ScalarMatrix, c: ScalarVector) -> ScalarVector:
    """V @ c over GF(q): result[j] = sum_i V[j][i] * c[i]."""
    if V.field.modulus != c.field.modulus:
        raise FieldMismatch(f"{V.field} vs {c.field}")
    if V.cols != len(c):
        raise DimensionMismatch(f"{V.rows}x{V.cols} matrix times length-{len(c)} vector")
    q = V.field.modulus
    cv = c.values
    return ScalarVector(V.field, [sum(a * b for a, b in zip(row, cv)) % q for row in V.data])


def rank(M: ScalarMatrix) -> int:
    """Rank over GF(q) by fraction-free elimination.

    Pivot selection: first row (in index order) with a nonzero entry in the
    current column, columns scanned left to right, so the result is
    bit-reproducible everywhere.
    """
    q = M.field.modulus
    work = [row[:] for row in M.data]
    r = 0
    for j in range(M.cols):
        piv = None
        for i in range(r, M.rows):
            if work[i][j]:
                piv = i
                break
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        pv = work[r][j]
        prow = work[r]
        for i in range(r + 1, M.rows):
            f = work[i][j]
            if f:
                ri = work[i]
                work[i] = [(pv * a - f * b) % q for a, b in zip(ri, prow)]
        r += 1
        if r == M.rows:
            break
    return r


def solve(A: ScalarMatrix, B: ScalarMatrix) -> ScalarMatrix:
    """Solve A @ X = B for square invertible A by Gauss-Jordan elimination."""
    if A.rows != A.cols:
        raise DimensionMismatch(f"A is {A.rows}x{A.cols}, not square")
    if A.field.modulus != B.field.modulus:
        raise FieldMismatch(f"{A.field} vs {B.field}")
    if B.rows != A.rows:
        raise DimensionMismatch(f"B has {B.rows} rows, expected {A.rows}")
    n, k, q = A.rows, B.cols, A.field.modulus
    aug = [A.data[i][:] + B.data[i][:] for i in range(n)]
    for j in range(n):
        piv = None
        for i in range(j, n):
            if aug[i][j]:
                piv = i
                break
        if piv is None:
            raise SingularMatrix(f"column {j} has no pivot")
        aug[j], aug[piv] = aug[piv], aug[j]
        inv = pow(aug[j][j], q - 2, q)
        aug[j] = [inv * v % q for v in aug[j]]
        prow = aug[j]
        for i in range(n):
            if i != j and aug[i][j]:
                f = aug[i][j]
                aug[i] = [(a - f * b) % q for a, b in zip(aug[i], prow)]
    return ScalarMatrix(A.field, [row[n : n + k] for row in aug])
