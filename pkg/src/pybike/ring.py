"""Arithmetic in R = F2[x]/(x^r - 1).

Dense elements are Python ints holding exactly r coefficient bits; the
integer never has bits at or above position r, so there is no padding to
clean up.  All operations on dense values are whole-word bitwise operations
or gathers through tables that depend on r alone.  Nothing branches on, or
indexes memory by, coefficient values.  CPython gives no hard timing
guarantee, so treat this as "constant time by construction".
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

import numpy as np

from . import clmul
from .errors import DimensionError, FormatError, NonInvertibleError, ParameterError
from .params import two_is_primitive


@dataclass(frozen=True, slots=True)
class RingElement:
    r: int
    bits: int

    def __post_init__(self):
        if self.r <= 0:
            raise DimensionError("ring size must be positive")
        if self.bits < 0 or self.bits >> self.r:
            raise FormatError("element has coefficients outside [0, r)")

    def __xor__(self, other: "RingElement") -> "RingElement":
        return add(self, other)

    def __mul__(self, other):
        if isinstance(other, SparseVector):
            return mul_sparse(self, other)
        return mul_dense(self, other)

    def __bytes__(self) -> bytes:
        return serialize(self)

    def __repr__(self) -> str:
        return f"RingElement(r={self.r}, weight={weight(self)})"

    def support(self) -> list[int]:
        """Indices of nonzero coefficients.  Not constant time; tests only."""
        return [i for i in range(self.r) if (self.bits >> i) & 1]


@dataclass(frozen=True, slots=True)
class SparseVector:
    n: int
    indices: tuple[int, ...]

    def __post_init__(self):
        idx = tuple(self.indices)
        object.__setattr__(self, "indices", idx)
        if self.n <= 0:
            raise DimensionError("length must be positive")
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise FormatError("indices must be strictly increasing")
        if idx and (idx[0] < 0 or idx[-1] >= self.n):
            raise FormatError("index out of range")

    @property
    def weight(self) -> int:
        return len(self.indices)

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)


def _check(a: RingElement, b: RingElement) -> None:
    if a.r != b.r:
        raise DimensionError(f"ring sizes differ: {a.r} != {b.r}")


def _mask(r: int) -> int:
    return (1 << r) - 1


def zero(r: int) -> RingElement:
    return RingElement(r, 0)


def one(r: int) -> RingElement:
    return RingElement(r, 1)


def monomial(r: int, i: int) -> RingElement:
    return RingElement(r, 1 << (i % r))


def from_indices(r: int, indices: Iterable[int]) -> RingElement:
    bits = 0
    for i in indices:
        if not 0 <= i < r:
            raise DimensionError(f"index {i} outside [0, {r})")
        bits ^= 1 << i
    return RingElement(r, bits)


def densify(v: SparseVector) -> RingElement:
    return from_indices(v.n, v.indices)


def random_element(r: int, rng: random.Random | None = None) -> RingElement:
    rng = rng or random.Random()
    return RingElement(r, rng.getrandbits(r))


# --- int-level kernels (also used directly by the decoder) -------------------


def rotl(x: int, k: int, r: int) -> int:
    """Cyclic left rotation by k of an r-bit value, i.e. multiplication by x^k."""
    k %= r
    return ((x << k) | (x >> (r - k))) & _mask(r)


def mul_sparse_int(x: int, indices: Iterable[int], r: int) -> int:
    mask = _mask(r)
    acc = 0
    for k in indices:
        acc ^= ((x << k) | (x >> (r - k))) & mask
    return acc


def fold(product: int, r: int) -> int:
    """Reduce a product of two elements (< 2r - 1 bits) modulo x^r - 1."""
    return (product ^ (product >> r)) & _mask(r)


# --- public operations -------------------------------------------------------


def add(a: RingElement, b: RingElement) -> RingElement:
    _check(a, b)
    return RingElement(a.r, a.bits ^ b.bits)


def mul_dense(a: RingElement, b: RingElement) -> RingElement:
    _check(a, b)
    return RingElement(a.r, fold(clmul.get_provider().clmul(a.bits, b.bits), a.r))


def mul_sparse(a: RingElement, b: SparseVector) -> RingElement:
    """a times the element whose support is b; one rotation per index of b."""
    if a.r != b.n:
        raise DimensionError(f"ring size {a.r} != sparse length {b.n}")
    return RingElement(a.r, mul_sparse_int(a.bits, b.indices, a.r))


def weight(a: RingElement) -> int:
    return a.bits.bit_count()


def _to_bits(x: int, r: int) -> np.ndarray:
    raw = x.to_bytes((r + 7) // 8, "little")
    return np.unpackbits(np.frombuffer(raw, np.uint8), bitorder="little", count=r)


def _from_bits(bits: np.ndarray) -> int:
    return int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little")


@lru_cache(maxsize=None)
def _square_table(r: int, k: int) -> np.ndarray:
    # out[j] = in[j * 2^-k mod r]; depends only on the public ring size
    inv = pow(2, -k, r)
    table = (np.arange(r, dtype=np.int64) * inv) % r
    table.setflags(write=False)
    return table


def multi_square_int(x: int, k: int, r: int) -> int:
    """x^(2^k) as the coefficient permutation i -> 2^k i mod r."""
    return _from_bits(_to_bits(x, r)[_square_table(r, k)])


def square(a: RingElement) -> RingElement:
    return RingElement(a.r, multi_square_int(a.bits, 1, a.r))


def multi_square(a: RingElement, k: int) -> RingElement:
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0:
        return a
    return RingElement(a.r, multi_square_int(a.bits, k, a.r))


def inversion_chain(r: int) -> list[tuple[int, bool]]:
    """Itoh-Tsujii steps for beta_(r-2) = a^(2^(r-2) - 1).

    Each step (k, extra) maps beta_m to beta_2m = beta_m^(2^m) * beta_m with
    k = m, and when ``extra`` also to beta_(2m+1) = beta_2m^2 * a.
    """
    n = r - 2
    steps = []
    m = 1
    for bit in bin(n)[3:]:
        extra = bit == "1"
        steps.append((m, extra))
        m = 2 * m + extra
    return steps


def inversion_cost(r: int) -> tuple[int, int]:
    """(multiplications, multi-squarings) performed by :func:`invert`."""
    steps = inversion_chain(r)
    mults = len(steps) + sum(extra for _, extra in steps)
    return mults, mults + 1


@lru_cache(maxsize=None)
def _fermat_ok(r: int) -> bool:
    return two_is_primitive(r)


def invert(a: RingElement) -> RingElement:
    """Inverse of a unit of R via Fermat: a^-1 = a^(2^(r-1) - 2).

    With 2 primitive mod r, the units of R form a group of order 2^(r-1) - 1.
    The exponent is built by an Itoh-Tsujii chain of multi-squarings
    (coefficient permutations) and dense multiplications whose sequence
    depends on r only.
    """
    r = a.r
    if not _fermat_ok(r):
        raise ParameterError(f"2 is not a primitive root modulo {r}")
    # the only odd-weight non-unit is the all-ones element (r odd)
    if weight(a) % 2 == 0 or a.bits == _mask(r):
        raise NonInvertibleError("element is not a unit of R")
    provider = clmul.get_provider()
    base = a.bits
    beta = base
    for k, extra in inversion_chain(r):
        beta = fold(provider.clmul(multi_square_int(beta, k, r), beta), r)
        if extra:
            beta = fold(provider.clmul(multi_square_int(beta, 1, r), base), r)
    return RingElement(r, multi_square_int(beta, 1, r))


def serialize(a: RingElement) -> bytes:
    """Little-endian bit order: coefficient i is bit i % 8 of byte i // 8."""
    return a.bits.to_bytes((a.r + 7) // 8, "little")


def deserialize(data: bytes, r: int) -> RingElement:
    nbytes = (r + 7) // 8
    if len(data) != nbytes:
        raise FormatError(f"expected {nbytes} bytes, got {len(data)}")
    bits = int.from_bytes(data, "little")
    if bits >> r:
        raise FormatError("nonzero padding bits beyond r")
    return RingElement(r, bits)
