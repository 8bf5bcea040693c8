"""BIKE key generation, encapsulation and decapsulation with implicit rejection."""

from __future__ import annotations

import hmac
import struct
from dataclasses import dataclass

from . import decoder
from ._profile import scope
from .errors import FormatError, ParameterError
from .oracles import ErrorVector, hash_H, hash_K, hash_L
from .params import LEVEL_TAGS, TAG_LEVELS, Level, ParameterSet, parameter_set
from .ring import (
    RingElement,
    SparseVector,
    add,
    densify,
    deserialize,
    invert,
    mul_dense,
    mul_sparse,
    serialize,
)
from .sampling import check_seed, derive_key_material, fresh_seed

_R_TO_LEVEL = {parameter_set(lv).r: lv for lv in Level}


@dataclass(frozen=True)
class PrivateKey:
    h0: SparseVector
    h1: SparseVector
    sigma: bytes
    level: Level

    @property
    def params(self) -> ParameterSet:
        return parameter_set(self.level)


@dataclass(frozen=True)
class PublicKey:
    h: RingElement
    level: Level

    @property
    def params(self) -> ParameterSet:
        return parameter_set(self.level)


@dataclass(frozen=True)
class Ciphertext:
    s: RingElement
    m_masked: bytes

    @property
    def level(self) -> Level:
        try:
            return _R_TO_LEVEL[self.s.r]
        except KeyError:
            raise ParameterError(f"no parameter set with r = {self.s.r}") from None

    def to_bytes(self) -> bytes:
        """Untagged body, ceil(r/8) + 32 bytes."""
        return serialize(self.s) + self.m_masked


def ciphertext_size(p: ParameterSet) -> int:
    return p.r_bytes + p.ell_bytes


def _xor_bytes(a: bytes, b: bytes) -> bytes:
    return bytes(x ^ y for x, y in zip(a, b, strict=True))


def _select(mask_bit: int, if_one: bytes, if_zero: bytes) -> bytes:
    """Branch-free choice between two equal-length byte strings."""
    n = len(if_one)
    mask = -mask_bit
    x = int.from_bytes(if_one, "little")
    y = int.from_bytes(if_zero, "little")
    return ((x & mask) | (y & ~mask)).to_bytes(n, "little")


def keygen(seed: bytes, p: ParameterSet | Level | str) -> tuple[PrivateKey, PublicKey]:
    """Deterministic key pair: h = h1 * h0^-1."""
    if not isinstance(p, ParameterSet):
        p = parameter_set(p)
    seed = check_seed(seed)
    with scope("PRNG"):
        h0, h1, sigma = derive_key_material(seed, p)
    with scope("Inversion"):
        h0_inv = invert(densify(h0))
    with scope("Multiplication"):
        h = mul_sparse(h0_inv, h1)
    return PrivateKey(h0, h1, sigma, p.level), PublicKey(h, p.level)


def encaps(pk: PublicKey, m: bytes) -> tuple[bytes, Ciphertext]:
    """(K, c) for message m; deterministic in (pk, m)."""
    p = pk.params
    if pk.h.r != p.r:
        raise ParameterError("public key does not match its level")
    m = check_seed(m, "message")
    with scope("H"):
        e = hash_H(m, p)
    with scope("Multiplication"):
        s = add(e.e0, mul_dense(e.e1, pk.h))
    with scope("L"):
        m_masked = _xor_bytes(m, hash_L(e))
    c = Ciphertext(s, m_masked)
    with scope("K"):
        key = hash_K(m, c)
    return key, c


def encaps_random(pk: PublicKey) -> tuple[bytes, Ciphertext]:
    """Encapsulate a fresh message drawn from the OS entropy source."""
    return encaps(pk, fresh_seed())


def decaps(sk: PrivateKey, c: Ciphertext) -> bytes:
    """Shared secret, or K(sigma, c) when decoding or re-encryption fails.

    Both rejection causes feed the same mask, so callers see one behaviour.
    """
    p = sk.params
    if c.s.r != p.r or len(c.m_masked) != p.ell_bytes:
        raise ParameterError("ciphertext does not match the private key's level")
    with scope("Decoding"):
        syndrome = decoder.compute_syndrome(c.s, sk.h0)
        out = decoder.bgf_decode(syndrome, sk.h0, sk.h1, p)
    with scope("L"):
        m2 = _xor_bytes(c.m_masked, hash_L(out.e_prime))
    with scope("H"):
        e2 = hash_H(m2, p)
    same = hmac.compare_digest(e2.to_bytes(), out.e_prime.to_bytes())
    accept = int(same) & int(out.success)
    a = _select(accept, m2, sk.sigma)
    with scope("K"):
        return hash_K(a, c)


# --- wire formats -------------------------------------------------------------


def _tag(level: Level) -> bytes:
    return bytes([LEVEL_TAGS[level]])


def _untag(data: bytes) -> ParameterSet:
    if not data:
        raise FormatError("empty input")
    level = TAG_LEVELS.get(data[0])
    if level is None:
        raise FormatError(f"unknown level tag 0x{data[0]:02x}")
    return parameter_set(level)


def _expect_len(data: bytes, n: int, what: str) -> None:
    if len(data) != n:
        raise FormatError(f"{what}: expected {n} bytes, got {len(data)}")


def serialize_pk(pk: PublicKey) -> bytes:
    return _tag(pk.level) + serialize(pk.h)


def deserialize_pk(data: bytes) -> PublicKey:
    p = _untag(data)
    _expect_len(data, 1 + p.r_bytes, "public key")
    return PublicKey(deserialize(data[1:], p.r), p.level)


def serialize_sk(sk: PrivateKey) -> bytes:
    idx = sk.h0.indices + sk.h1.indices
    return _tag(sk.level) + struct.pack(f"<{len(idx)}I", *idx) + sk.sigma


def _indices(raw: bytes, count: int, r: int) -> SparseVector:
    idx = struct.unpack(f"<{count}I", raw)
    if any(i >= r for i in idx):
        raise FormatError("key index out of range")
    return SparseVector(r, idx)  # rejects unsorted or duplicate indices


def deserialize_sk(data: bytes) -> PrivateKey:
    p = _untag(data)
    block = 4 * p.d
    _expect_len(data, 1 + 2 * block + p.ell_bytes, "private key")
    h0 = _indices(data[1:1 + block], p.d, p.r)
    h1 = _indices(data[1 + block:1 + 2 * block], p.d, p.r)
    return PrivateKey(h0, h1, bytes(data[1 + 2 * block:]), p.level)


def serialize_ct(c: Ciphertext) -> bytes:
    return _tag(c.level) + c.to_bytes()


def deserialize_ct(data: bytes) -> Ciphertext:
    p = _untag(data)
    _expect_len(data, 1 + ciphertext_size(p), "ciphertext")
    return Ciphertext(deserialize(data[1:1 + p.r_bytes], p.r), bytes(data[1 + p.r_bytes:]))


__all__ = [
    "Ciphertext",
    "ErrorVector",
    "PrivateKey",
    "PublicKey",
    "ciphertext_size",
    "decaps",
    "deserialize_ct",
    "deserialize_pk",
    "deserialize_sk",
    "encaps",
    "encaps_random",
    "keygen",
    "serialize_ct",
    "serialize_pk",
    "serialize_sk",
]
