"""Black-Gray-Flip decoding of QC-MDPC syndromes.

Unsatisfied-parity-check counters are never materialised per position.
For a block with support h, the counter at j is the sum over k in h of
syndrome bit j + k.  That sum is d one-bit values per position, added in
parallel for all r positions with a carry-save adder tree over Python ints.
The result is a handful of bit planes, counter = sum_k plane_k * 2^k.
Thresholding is a bit-sliced comparison against a public constant.  The
operation sequence depends on (r, d, T) only, never on secret bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, ParameterError
from .oracles import ErrorVector
from .params import ParameterSet
from .ring import RingElement, SparseVector, mul_sparse, mul_sparse_int

Syndrome = RingElement

# recheck e0'h0 + e1'h1 == s on every successful decode (slow; tests enable it)
CHECK_SOLUTIONS = False


@dataclass(frozen=True)
class DecodeOutcome:
    e_prime: ErrorVector
    success: bool


def compute_syndrome(c0: RingElement, h0: SparseVector) -> Syndrome:
    """c0 * h0, which equals e0*h0 + e1*h1 for c0 = e0 + e1*h."""
    return mul_sparse(c0, h0)


def _carry_save_planes(values: list[int], nplanes: int) -> list[int]:
    """Bit-sliced sum of one-bit-per-position ints, LSB plane first."""
    columns: list[list[int]] = [list(values)] + [[] for _ in range(nplanes)]
    planes = []
    for k in range(nplanes):
        col = columns[k]
        nxt = columns[k + 1]
        while len(col) > 2:
            a = col.pop()
            b = col.pop()
            c = col.pop()
            t = a ^ b
            col.append(t ^ c)
            nxt.append((a & b) | (c & t))
        if len(col) == 2:
            a, b = col
            col[:] = [a ^ b]
            nxt.append(a & b)
        planes.append(col[0] if col else 0)
    return planes


def _counter_planes(s: int, h: SparseVector, r: int) -> list[int]:
    mask = (1 << r) - 1
    # syndrome rotated right by k puts bit j + k at position j
    rotated = [((s >> k) | (s << (r - k))) & mask for k in h.indices]
    return _carry_save_planes(rotated, max(len(h), 1).bit_length())


def _at_least(planes: list[int], threshold: int, r: int) -> int:
    """Mask of positions whose bit-sliced counter is >= threshold."""
    mask = (1 << r) - 1
    if threshold <= 0:
        return mask
    if threshold >> len(planes):
        return 0
    gt = 0
    eq = mask
    for k in reversed(range(len(planes))):
        p = planes[k]
        if (threshold >> k) & 1:
            eq &= p
        else:
            gt |= eq & p
            eq &= ~p
    return gt | eq


def _planes_to_counts(planes: list[int], r: int) -> np.ndarray:
    counts = np.zeros(r, dtype=np.int64)
    for k, p in enumerate(planes):
        raw = p.to_bytes((r + 7) // 8, "little")
        bits = np.unpackbits(np.frombuffer(raw, np.uint8), bitorder="little", count=r)
        counts += bits.astype(np.int64) << k
    return counts


def _check_key(s: RingElement, h0: SparseVector, h1: SparseVector) -> None:
    if not (s.r == h0.n == h1.n):
        raise DimensionError("syndrome and key blocks must share r")


def upc_counters(s: Syndrome, h0: SparseVector, h1: SparseVector) -> np.ndarray:
    """Unsatisfied parity-check count of each of the 2r error positions."""
    _check_key(s, h0, h1)
    r = s.r
    return np.concatenate([
        _planes_to_counts(_counter_planes(s.bits, h0, r), r),
        _planes_to_counts(_counter_planes(s.bits, h1, r), r),
    ])


def threshold(syndrome_weight: int, iteration: int, p: ParameterSet) -> int:
    """Flip threshold max(floor(a*S + b), floor), in exact rational arithmetic.

    The same affine rule applies at every iteration; the fixed threshold of
    the masked passes is :func:`mask_threshold`.
    """
    if not 0 <= syndrome_weight <= p.r:
        raise ParameterError(f"syndrome weight {syndrome_weight} outside [0, {p.r}]")
    if iteration < 1:
        raise ParameterError("iterations are numbered from 1")
    affine = math.floor(p.threshold_a * syndrome_weight + p.threshold_b)
    return max(affine, p.threshold_floor)


def mask_threshold(p: ParameterSet) -> int:
    return (p.d + 1) // 2 + 1


def bgf_decode(s: Syndrome, h0: SparseVector, h1: SparseVector, p: ParameterSet) -> DecodeOutcome:
    """Recover e with e0*h0 + e1*h1 = s.

    Iteration 1 flips every position at or above the threshold.  It records
    the flipped positions (black) and those within tau below it (gray).  Two
    masked passes then re-examine the black and the gray positions against
    a fixed threshold.  Iterations 2..nb_iter are plain threshold flips.
    All nb_iter iterations run even after the syndrome reaches zero.
    """
    _check_key(s, h0, h1)
    if len(h0) != p.d or len(h1) != p.d or s.r != p.r:
        raise ParameterError("key weights or ring size do not match the parameter set")
    r = p.r
    e0 = e1 = 0
    cur = s.bits

    def flip(mask0: int, mask1: int) -> None:
        nonlocal e0, e1, cur
        e0 ^= mask0
        e1 ^= mask1
        cur ^= mul_sparse_int(mask0, h0.indices, r) ^ mul_sparse_int(mask1, h1.indices, r)

    for it in range(1, p.nb_iter + 1):
        t = threshold(cur.bit_count(), it, p)
        planes0 = _counter_planes(cur, h0, r)
        planes1 = _counter_planes(cur, h1, r)
        black0 = _at_least(planes0, t, r)
        black1 = _at_least(planes1, t, r)
        if it == 1:
            gray0 = _at_least(planes0, t - p.tau, r) & ~black0
            gray1 = _at_least(planes1, t - p.tau, r) & ~black1
        flip(black0, black1)
        if it == 1:
            tm = mask_threshold(p)
            for m0, m1 in ((black0, black1), (gray0, gray1)):
                f0 = _at_least(_counter_planes(cur, h0, r), tm, r) & m0
                f1 = _at_least(_counter_planes(cur, h1, r), tm, r) & m1
                flip(f0, f1)

    success = cur == 0
    e = ErrorVector(RingElement(r, e0), RingElement(r, e1))
    if CHECK_SOLUTIONS and success:
        recomputed = mul_sparse_int(e0, h0.indices, r) ^ mul_sparse_int(e1, h1.indices, r)
        assert recomputed == s.bits, "decoder reported success for a non-solution"
    return DecodeOutcome(e, success)
