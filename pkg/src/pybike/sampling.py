"""Seed expansion: SHAKE256 streams and fixed-weight index sampling."""

from __future__ import annotations

import hashlib
import os

import numpy as np

from .errors import EntropyError, FormatError, ParameterError
from .params import ParameterSet
from .ring import SparseVector

SEED_BYTES = 32

# one-byte domain separators appended to the seed
DOMAIN_H0 = 0x01
DOMAIN_H1 = 0x02
DOMAIN_SIGMA = 0x03
DOMAIN_MESSAGE = 0x04

MAX_DRAWS = 10**6


def check_seed(seed: bytes, name: str = "seed") -> bytes:
    seed = bytes(seed)
    if len(seed) != SEED_BYTES:
        raise FormatError(f"{name} must be {SEED_BYTES} bytes, got {len(seed)}")
    return seed


def fresh_seed() -> bytes:
    """32 bytes from the operating system's CSPRNG."""
    return os.urandom(SEED_BYTES)


class XofStream:
    """Sequential reader over SHAKE256(seed || domain).

    hashlib can only produce output prefixes, so the stream keeps a buffer
    and re-squeezes a longer prefix when it runs dry.  The bytes returned
    are exactly the XOF output in order.
    """

    def __init__(self, seed: bytes, domain: int):
        if not 0 <= domain <= 0xFF:
            raise ParameterError("domain must fit in one byte")
        self._xof = hashlib.shake_256(check_seed(seed) + bytes([domain]))
        self._buf = b""
        self._pos = 0

    def read(self, n: int) -> bytes:
        end = self._pos + n
        if end > len(self._buf):
            self._buf = self._xof.digest(max(end, 2 * len(self._buf), 1024))
        out = self._buf[self._pos:end]
        self._pos = end
        return out

    @property
    def consumed(self) -> int:
        return self._pos


def xof_init(seed: bytes, domain: int) -> XofStream:
    return XofStream(seed, domain)


def sample_fixed_weight(stream: XofStream, n: int, wt: int) -> SparseVector:
    """Exactly ``wt`` distinct indices in [0, n), drawn by rejection.

    Draws are little-endian 32-bit words taken from the stream in order.
    Words at or above the largest multiple of n below 2^32 are rejected;
    the rest are reduced mod n, and a value already taken counts as a
    rejected draw.  The result is the first ``wt`` distinct accepted
    values.  Words are read in blocks, and duplicates are found by
    comparing every candidate against every earlier one, so memory traffic
    does not depend on index values.  Only the number of blocks read,
    which is public randomness, varies.
    """
    if n <= 0 or wt < 0:
        raise ParameterError("need n > 0 and wt >= 0")
    if wt > n:
        raise ParameterError(f"weight {wt} exceeds length {n}")
    bound = (2**32 // n) * n
    pool = np.empty(0, dtype=np.int64)
    live = np.empty(0, dtype=bool)
    draws = 0
    while True:
        taken = int(np.count_nonzero(live))
        if taken >= wt:
            break
        if draws >= MAX_DRAWS:
            raise EntropyError("fixed-weight sampler exceeded its draw budget")
        need = wt - taken
        block = need + need // 4 + 8
        draws += block
        words = np.frombuffer(stream.read(4 * block), dtype="<u4").astype(np.int64)
        pool = np.concatenate([pool[live], words % n])
        valid = np.concatenate([np.ones(taken, dtype=bool), words < bound])
        same = (pool[:, None] == pool[None, :]) & valid[None, :]
        seen_before = np.tril(same, -1).any(axis=1)
        live = valid & ~seen_before
        # keep only the first wt survivors, in stream order
        live &= np.cumsum(live) <= wt
    return SparseVector(n, tuple(sorted(int(i) for i in pool[live])))


def derive_key_material(seed: bytes, p: ParameterSet) -> tuple[SparseVector, SparseVector, bytes]:
    """(h0, h1, sigma) from one 32-byte seed via three separated streams."""
    # odd block weight makes h0 invertible without a retry loop
    if p.d % 2 == 0:
        raise ParameterError("w/2 must be odd")
    h0 = sample_fixed_weight(xof_init(seed, DOMAIN_H0), p.r, p.d)
    h1 = sample_fixed_weight(xof_init(seed, DOMAIN_H1), p.r, p.d)
    sigma = xof_init(seed, DOMAIN_SIGMA).read(p.ell_bytes)
    return h0, h1, sigma
