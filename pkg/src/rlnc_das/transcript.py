"""Fiat-Shamir transcript: absorbs labeled messages, emits field challenges.

The state is a running SHA-256 over length-framed (label, data) pairs, so
identical absorb sequences give identical challenges and any single-byte
difference diverges everywhere downstream.  Challenges are drawn by
rejection sampling (mask to the modulus bit length, retry out-of-range
draws), which keeps them uniform for any prime modulus.
"""

from __future__ import annotations

import hashlib

from .field import FieldParams


class Transcript:
    __slots__ = ("_h",)

    def __init__(self, domain: bytes):
        self._h = hashlib.sha256()
        self._absorb_frame(b"domain", bytes(domain))

    def _absorb_frame(self, label: bytes, data: bytes):
        h = self._h
        h.update(len(label).to_bytes(4, "little"))
        h.update(label)
        h.update(len(data).to_bytes(4, "little"))
        h.update(data)

    def absorb(self, label: bytes, data: bytes):
        self._absorb_frame(bytes(label), bytes(data))

    def absorb_int(self, label: bytes, value: int):
        self.absorb(label, value.to_bytes(8, "little"))

    def absorb_scalar(self, label: bytes, field: FieldParams, value: int):
        self.absorb(label, field.encode_scalar(value))

    def absorb_element(self, label: bytes, element):
        self.absorb(label, element.encode())

    def clone(self) -> "Transcript":
        t = Transcript.__new__(Transcript)
        t._h = self._h.copy()
        return t

    def _squeeze(self, label: bytes, counter: int) -> bytes:
        fork = self._h.copy()
        fork.update(b"squeeze")
        fork.update(len(label).to_bytes(4, "little"))
        fork.update(label)
        fork.update(counter.to_bytes(8, "little"))
        return fork.digest()

    def challenge_scalar(self, label: bytes, field: FieldParams, nonzero: bool = True) -> int:
        """Uniform scalar in [1, q) (or [0, q) with nonzero=False)."""
        q = field.modulus
        bits = (q - 1).bit_length()
        mask = (1 << bits) - 1
        counter = 0
        while True:
            # 32 hash bytes cover all supported moduli (<= 253 bits)
            v = int.from_bytes(self._squeeze(label, counter), "little") & mask
            counter += 1
            if v < q and (v or not nonzero):
                self.absorb(label, field.encode_scalar(v))
                return v

    def challenge_vector(self, label: bytes, field: FieldParams, length: int) -> list[int]:
        """Uniform vector over F^length (coordinates may be zero)."""
        out = [self.challenge_scalar(label, field, nonzero=False) for _ in range(length)]
        return out

    def challenge_bytes(self, label: bytes, count: int) -> bytes:
        out = bytearray()
        counter = 0
        while len(out) < count:
            out += self._squeeze(label, counter)
            counter += 1
        out = bytes(out[:count])
        self.absorb(label, out)
        return out
