"""Prime-order group abstraction and Pedersen vector commitments.

Two backends share one interface:

* ``RistrettoGroup`` — the cryptographic group (ristretto255, order
  ~2**252, 32-byte encodings).  Commitments are binding under discrete
  log; generator bases are derived transparently by hashing a label, so
  no trusted setup and no known discrete-log relations among generators.
* ``TransparentGroup(q)`` — the additive group of integers mod a small
  prime q.  Commitments degenerate to linear maps F^n -> F and are NOT
  binding; the backend exists so Monte Carlo experiments with scripted
  adversaries can run millions of cheap group operations.  Test-only.

Commitments here are binding but not hiding: there is no blinding term,
a commitment to v is exactly sum(v_j * g_j).
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

from . import ristretto255 as r255
from .errors import DimensionMismatch
from .field import FieldParams, ScalarVector

_HASH_DOMAIN = b"rlnc-das/hash-to-group/v1"


class GroupElement:
    """Opaque element of a prime-order group; immutable value object."""

    __slots__ = ("group", "raw", "_enc")

    def __init__(self, group: "Group", raw):
        self.group = group
        self.raw = raw
        self._enc = None

    def __add__(self, other: "GroupElement") -> "GroupElement":
        self._same_group(other)
        return GroupElement(self.group, self.group._add(self.raw, other.raw))

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        self._same_group(other)
        return GroupElement(self.group, self.group._add(self.raw, self.group._neg(other.raw)))

    def __neg__(self) -> "GroupElement":
        return GroupElement(self.group, self.group._neg(self.raw))

    def __rmul__(self, k: int) -> "GroupElement":
        return GroupElement(self.group, self.group._mul(self.raw, int(k)))

    __mul__ = __rmul__

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.group is other.group and self.group._eq(self.raw, other.raw)

    def __hash__(self):
        return hash(self.encode())

    def encode(self) -> bytes:
        if self._enc is None:
            self._enc = self.group._encode(self.raw)
        return self._enc

    def _same_group(self, other: "GroupElement"):
        if self.group is not other.group:
            raise DimensionMismatch("elements of different groups")

    def __repr__(self):
        return f"<{self.group.name} element {self.encode().hex()[:16]}...>"


class Group:
    """Backend interface; see RistrettoGroup and TransparentGroup."""

    name: str
    order: int
    element_size: int

    def identity(self) -> GroupElement:
        return GroupElement(self, self._identity())

    def decode(self, data: bytes) -> GroupElement:
        return GroupElement(self, self._decode(data))

    def from_uniform_bytes(self, data: bytes) -> GroupElement:
        return GroupElement(self, self._from_uniform(data))

    def msm(self, elements, scalars) -> GroupElement:
        """sum(scalars[i] * elements[i]); the workhorse for commitments."""
        raws = [e.raw for e in elements]
        return GroupElement(self, self._msm(raws, list(scalars)))

    def scalar_field_modulus(self) -> int:
        return self.order


class RistrettoGroup(Group):
    name = "ristretto255"
    order = r255.ORDER
    element_size = r255.ENCODED_SIZE

    _identity = staticmethod(lambda: r255.IDENTITY)
    _add = staticmethod(lambda a, b: r255.pt_add(a, b))
    _neg = staticmethod(lambda a: r255.pt_neg(a))
    _mul = staticmethod(lambda a, k: r255.scalar_mul(k, a))
    _eq = staticmethod(lambda a, b: r255.pt_eq(a, b))
    _encode = staticmethod(lambda a: r255.encode(a))
    _decode = staticmethod(lambda d: r255.decode(d))
    _from_uniform = staticmethod(lambda d: r255.from_uniform_bytes(d))
    _msm = staticmethod(lambda raws, ks: r255.msm(raws, ks))

    def basepoint(self) -> GroupElement:
        return GroupElement(self, r255.BASEPOINT)


class TransparentGroup(Group):
    """Additive integers mod q; linear-map 'commitments', not binding."""

    def __init__(self, field: FieldParams):
        self.field = field
        self.order = field.modulus
        self.element_size = field.byte_width
        self.name = f"transparent-{field.modulus}"

    def _identity(self):
        return 0

    def _add(self, a, b):
        return (a + b) % self.order

    def _neg(self, a):
        return -a % self.order

    def _mul(self, a, k):
        return a * (k % self.order) % self.order

    def _eq(self, a, b):
        return a == b

    def _encode(self, a):
        return int(a).to_bytes(self.element_size, "little")

    def _decode(self, data):
        if len(data) != self.element_size:
            raise ValueError(f"expected {self.element_size} bytes, got {len(data)}")
        v = int.from_bytes(data, "little")
        if v >= self.order:
            raise ValueError("non-canonical transparent element")
        return v

    def _from_uniform(self, data):
        # never map to zero so derived generators stay usable
        return 1 + int.from_bytes(data, "little") % (self.order - 1)

    def _msm(self, raws, ks):
        return sum(a * (int(k) % self.order) for a, k in zip(raws, ks)) % self.order


_RISTRETTO = RistrettoGroup()
_TRANSPARENT_CACHE: dict[int, TransparentGroup] = {}


def ristretto_group() -> RistrettoGroup:
    return _RISTRETTO


def transparent_group(field: FieldParams) -> TransparentGroup:
    g = _TRANSPARENT_CACHE.get(field.modulus)
    if g is None:
        g = _TRANSPARENT_CACHE[field.modulus] = TransparentGroup(field)
    return g


@dataclass(frozen=True)
class GeneratorBasis:
    """Deterministically derived generators; prefix-stable in the count."""

    label: bytes
    elements: tuple[GroupElement, ...]

    def __len__(self):
        return len(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def __iter__(self):
        return iter(self.elements)


# One row commitment per data row; plain sequence, order matters.
RowCommitments = list[GroupElement]

_BASIS_CACHE: dict[tuple[str, int, bytes, int], GeneratorBasis] = {}


def derive_basis(group: Group, label: bytes, count: int) -> GeneratorBasis:
    """Derive ``count`` generators from ``label`` by hash-to-group.

    Generator i is the one-way map applied to SHA-512(domain || label
    length || label || i as 8-byte little-endian), so the same (label,
    count) always yields the same basis and shorter bases are prefixes
    of longer ones.
    """
    if count < 1:
        raise DimensionMismatch("basis needs at least one generator")
    key = (group.name, group.order, bytes(label), count)
    cached = _BASIS_CACHE.get(key)
    if cached is not None:
        return cached
    prev = _BASIS_CACHE.get((group.name, group.order, bytes(label), count - 1))
    elements = list(prev.elements) if prev is not None else []
    for i in range(len(elements), count):
        h = hashlib.sha512()
        h.update(_HASH_DOMAIN)
        h.update(len(label).to_bytes(4, "little"))
        h.update(label)
        h.update(i.to_bytes(8, "little"))
        elements.append(group.from_uniform_bytes(h.digest()))
    basis = GeneratorBasis(bytes(label), tuple(elements))
    _BASIS_CACHE[key] = basis
    return basis


def pedersen_commit(basis: GeneratorBasis, v: ScalarVector) -> GroupElement:
    """Commitment sum(v_j * g_j); additively homomorphic in v."""
    if len(basis) < len(v):
        raise DimensionMismatch(f"basis length {len(basis)} < vector length {len(v)}")
    group = basis.elements[0].group
    return group.msm(basis.elements[: len(v)], v.values)


def commit_rows(basis: GeneratorBasis, rows) -> RowCommitments:
    """Commit each row of a matrix under one basis."""
    return [pedersen_commit(basis, row) for row in rows]


def combine_commitments(weights: ScalarVector, coms: RowCommitments) -> GroupElement:
    """sum(weights_j * coms_j).

    For honestly formed row commitments this equals the direct commitment
    of the weighted row combination — the homomorphism the verifier relies
    on to check projected rows without seeing the data.
    """
    if len(weights) != len(coms):
        raise DimensionMismatch(f"{len(weights)} weights vs {len(coms)} commitments")
    if not coms:
        raise DimensionMismatch("empty commitment list")
    group = coms[0].group
    return group.msm(coms, weights.values)
