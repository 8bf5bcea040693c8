"""Wide carry-less multiplication providers.

A provider computes the full (unreduced) product of two binary polynomials
packed into Python ints, bit i being the coefficient of x^i.  The ring layer
only ever calls ``provider.clmul(a, b)`` and folds the result itself, so a
platform with hardware carry-less multiply can plug in its own provider.

Two providers ship with the package:

* :class:`IntegerClmul` (default) spreads every coefficient into a 16-bit
  slot, multiplies the two resulting integers with GMP and keeps the low bit
  of each slot.  Column sums never exceed the operand length, so they never
  carry into the neighbouring slot.
* :class:`KaratsubaClmul` is the word-level path: Karatsuba recursion over
  64-bit words with a branch-free 64x64 -> 128 schoolbook kernel.  It is
  slow in an interpreter and serves as an independent second route.
"""

from __future__ import annotations

from typing import Protocol

import numpy as np

try:
    import gmpy2

    _mpz = gmpy2.mpz
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    _mpz = int

WORD = 64
_WORD_MASK = (1 << WORD) - 1


class ClmulProvider(Protocol):
    name: str

    def clmul(self, a: int, b: int) -> int:
        """Carry-less product of a and b (no modular reduction)."""
        ...


def _spread(x: int, nbits: int, dtype: str) -> int:
    raw = x.to_bytes((nbits + 7) // 8, "little")
    bits = np.unpackbits(np.frombuffer(raw, np.uint8), bitorder="little", count=nbits)
    return int.from_bytes(bits.astype(dtype).tobytes(), "little")


class IntegerClmul:
    """Kronecker substitution on top of a big-integer multiply."""

    name = "integer"

    def clmul(self, a: int, b: int) -> int:
        if a < 0 or b < 0:
            raise ValueError("operands must be non-negative")
        nbits = max(a.bit_length(), b.bit_length(), 1)
        # a column sum is at most nbits, which must fit in one slot
        dtype = "<u2" if nbits < (1 << 16) else "<u4"
        slot = np.dtype(dtype).itemsize
        prod = _mpz(_spread(a, nbits, dtype)) * _mpz(_spread(b, nbits, dtype))
        raw = int(prod).to_bytes(2 * nbits * slot, "little")
        parity = (np.frombuffer(raw, dtype) & 1).astype(np.uint8)
        return int.from_bytes(np.packbits(parity, bitorder="little").tobytes(), "little")


def clmul_word(a: int, b: int) -> int:
    """64x64 -> 128 carry-less multiply without data-dependent branches."""
    acc = 0
    for i in range(WORD):
        acc ^= (a << i) & -((b >> i) & 1)
    return acc


class KaratsubaClmul:
    """Word-level Karatsuba with a schoolbook kernel below ``base_words``."""

    name = "karatsuba"

    def __init__(self, base_words: int = 2):
        self.base_words = max(1, base_words)

    def clmul(self, a: int, b: int) -> int:
        if a < 0 or b < 0:
            raise ValueError("operands must be non-negative")
        nwords = max(-(-max(a.bit_length(), b.bit_length()) // WORD), 1)
        return self._mul(a, b, nwords)

    def _school(self, a: int, b: int, nwords: int) -> int:
        aw = [(a >> (WORD * i)) & _WORD_MASK for i in range(nwords)]
        bw = [(b >> (WORD * i)) & _WORD_MASK for i in range(nwords)]
        acc = 0
        for i, x in enumerate(aw):
            for j, y in enumerate(bw):
                acc ^= clmul_word(x, y) << (WORD * (i + j))
        return acc

    def _mul(self, a: int, b: int, nwords: int) -> int:
        if nwords <= self.base_words:
            return self._school(a, b, nwords)
        lo = nwords // 2
        hi = nwords - lo
        shift = WORD * lo
        mask = (1 << shift) - 1
        a0, a1 = a & mask, a >> shift
        b0, b1 = b & mask, b >> shift
        z0 = self._mul(a0, b0, lo)
        z2 = self._mul(a1, b1, hi)
        z1 = self._mul(a0 ^ a1, b0 ^ b1, hi) ^ z0 ^ z2
        return z0 ^ (z1 << shift) ^ (z2 << (2 * shift))


_provider: ClmulProvider = IntegerClmul()


def get_provider() -> ClmulProvider:
    return _provider


def set_provider(provider: ClmulProvider) -> ClmulProvider:
    """Install a provider globally and return the previous one."""
    global _provider
    previous, _provider = _provider, provider
    return previous
