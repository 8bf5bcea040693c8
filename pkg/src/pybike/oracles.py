"""The random oracles H, L and K.

H expands a message into a weight-t error vector with the SHAKE256
fixed-weight sampler.  L and K are SHA3-384 truncated to 256 bits, each
behind its own one-byte prefix so that identical raw inputs never collide
across oracles.  These choices are internal and do not aim at bit-exact
agreement with any other BIKE implementation.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import TYPE_CHECKING

from .errors import DimensionError
from .params import ParameterSet
from .ring import RingElement, SparseVector, serialize
from .sampling import DOMAIN_MESSAGE, check_seed, sample_fixed_weight, xof_init

if TYPE_CHECKING:
    from .kem import Ciphertext

DIGEST_BYTES = 32
_PREFIX_L = b"\x05"
_PREFIX_K = b"\x06"


@dataclass(frozen=True)
class ErrorVector:
    e0: RingElement
    e1: RingElement

    def __post_init__(self):
        if self.e0.r != self.e1.r:
            raise DimensionError("error halves must share r")

    @property
    def r(self) -> int:
        return self.e0.r

    @property
    def weight(self) -> int:
        return self.e0.bits.bit_count() + self.e1.bits.bit_count()

    def to_bytes(self) -> bytes:
        return serialize(self.e0) + serialize(self.e1)

    def sparse(self) -> SparseVector:
        """Support over [0, 2r); positions >= r belong to e1."""
        idx = self.e0.support() + [self.r + i for i in self.e1.support()]
        return SparseVector(2 * self.r, tuple(idx))

    @classmethod
    def from_sparse(cls, v: SparseVector, r: int) -> "ErrorVector":
        if v.n != 2 * r:
            raise DimensionError(f"sparse error has length {v.n}, expected {2 * r}")
        lo = hi = 0
        for i in v.indices:
            # both halves touched for every index, selected by a mask
            sel = -(i >= r)
            lo ^= (1 << (i % r)) & ~sel
            hi ^= (1 << (i % r)) & sel
        return cls(RingElement(r, lo), RingElement(r, hi))

    @classmethod
    def zero(cls, r: int) -> "ErrorVector":
        return cls(RingElement(r, 0), RingElement(r, 0))


def hash_H(m: bytes, p: ParameterSet) -> ErrorVector:
    """Message -> error vector of total weight t over 2r positions."""
    stream = xof_init(check_seed(m, "message"), DOMAIN_MESSAGE)
    return ErrorVector.from_sparse(sample_fixed_weight(stream, 2 * p.r, p.t), p.r)


def _sha3_256bit(data: bytes) -> bytes:
    return hashlib.sha3_384(data).digest()[:DIGEST_BYTES]


def hash_L(e: ErrorVector) -> bytes:
    """Error vector -> 32-byte mask for the message."""
    return _sha3_256bit(_PREFIX_L + e.to_bytes())


def hash_K(prefix: bytes, c: "Ciphertext") -> bytes:
    """(m or m'' or sigma, ciphertext) -> 32-byte shared secret."""
    return _sha3_256bit(_PREFIX_K + bytes(prefix) + serialize(c.s) + bytes(c.m_masked))
