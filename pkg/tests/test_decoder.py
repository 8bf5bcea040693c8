import dataclasses
import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pybike import decoder, sampling
from pybike.errors import DimensionError
from pybike.oracles import ErrorVector
from pybike.params import parameter_set
from pybike.ring import RingElement, SparseVector, densify, mul_sparse, one, random_element
from reference import brute_force_counters, to_list

TOY = parameter_set("toy")
SL1 = parameter_set("sl1")


def toy_key(i):
    h0, h1, _ = sampling.derive_key_material(i.to_bytes(32, "little"), TOY)
    return h0, h1


def plant(e: ErrorVector, h0, h1):
    return mul_sparse(e.e0, h0) ^ mul_sparse(e.e1, h1)


def random_error(p, rng, t=None):
    idx = sorted(rng.sample(range(2 * p.r), p.t if t is None else t))
    return ErrorVector.from_sparse(SparseVector(2 * p.r, tuple(idx)), p.r)


# --- syndrome ----------------------------------------------------------------


def test_compute_syndrome_examples():
    h0, h1 = toy_key(0)
    assert decoder.compute_syndrome(RingElement(13, 0), h0).bits == 0
    assert decoder.compute_syndrome(one(13), h0) == densify(h0)
    with pytest.raises(DimensionError):
        decoder.compute_syndrome(one(11), h0)


def test_syndrome_identity_with_public_key():
    from pybike.ring import invert

    rng = random.Random(3)
    h0, h1 = toy_key(1)
    h = mul_sparse(invert(densify(h0)), h1)
    for _ in range(50):
        e = random_error(TOY, rng)
        c0 = e.e0 ^ (e.e1 * h)
        assert decoder.compute_syndrome(c0, h0) == plant(e, h0, h1)


# --- counters ----------------------------------------------------------------


def test_counters_zero_syndrome():
    h0, h1 = toy_key(2)
    assert not decoder.upc_counters(RingElement(13, 0), h0, h1).any()


def test_counters_match_parity_check_matrix():
    rng = random.Random(4)
    for i in range(200):
        h0, h1 = toy_key(i)
        s = random_element(13, rng)
        got = decoder.upc_counters(s, h0, h1)
        expect = brute_force_counters(to_list(s.bits, 13), list(h0), list(h1), 13)
        assert got.tolist() == expect
        assert got.max() <= TOY.d


def test_counters_production_against_numpy_correlation():
    rng = random.Random(5)
    h0, h1, _ = sampling.derive_key_material(bytes(32), SL1)
    s = random_element(SL1.r, rng)
    bits = np.array(to_list(s.bits, SL1.r))
    got = decoder.upc_counters(s, h0, h1)
    for block, h in enumerate((h0, h1)):
        expect = sum(np.roll(bits, -k) for k in h)
        assert (got[block * SL1.r:(block + 1) * SL1.r] == expect).all()
    assert got.max() <= SL1.d


@given(st.lists(st.integers(0, 2**40 - 1), min_size=0, max_size=40), st.integers(-2, 70))
def test_bitsliced_sum_and_compare(values, thr):
    r = 40
    planes = decoder._carry_save_planes(values, max(len(values), 1).bit_length())
    counts = decoder._planes_to_counts(planes, r)
    expect = np.array([sum((v >> j) & 1 for v in values) for j in range(r)])
    assert (counts == expect).all()
    mask = decoder._at_least(planes, thr, r)
    assert to_list(mask, r) == [int(c >= thr) for c in expect]


# --- threshold ---------------------------------------------------------------


def test_threshold_examples():
    assert decoder.threshold(0, 1, SL1) == 36
    # 0.0069722 * 5000 + 13.530 = 48.391
    assert decoder.threshold(5000, 1, SL1) == 48
    assert decoder.threshold(12323, 1, SL1) == 99  # 85.918... + 13.53
    for s in range(14):
        assert decoder.threshold(s, 1, TOY) == 2


@pytest.mark.parametrize("level", ["sl1", "sl3", "sl5", "toy"])
def test_threshold_monotone(level):
    p = parameter_set(level)
    values = [decoder.threshold(s, 1, p) for s in range(p.r + 1)]
    assert all(b >= a for a, b in zip(values, values[1:]))
    assert min(values) == p.threshold_floor


def test_mask_threshold():
    assert decoder.mask_threshold(SL1) == 37
    assert decoder.mask_threshold(TOY) == 3


# --- decoding ----------------------------------------------------------------


def test_zero_syndrome_decodes_to_zero():
    h0, h1, _ = sampling.derive_key_material(bytes(32), SL1)
    out = decoder.bgf_decode(RingElement(SL1.r, 0), h0, h1, SL1)
    assert out.success and out.e_prime.weight == 0


def test_sl1_planted_errors_recovered():
    rng = random.Random(6)
    for i in range(20):
        h0, h1, _ = sampling.derive_key_material(i.to_bytes(32, "little"), SL1)
        e = random_error(SL1, rng)
        out = decoder.bgf_decode(plant(e, h0, h1), h0, h1, SL1)
        assert out.success and out.e_prime == e


def test_random_syndromes_fail():
    rng = random.Random(7)
    h0, h1, _ = sampling.derive_key_material(bytes(32), SL1)
    outcomes = [decoder.bgf_decode(random_element(SL1.r, rng), h0, h1, SL1).success for _ in range(100)]
    assert not any(outcomes)


def test_toy_single_errors_exhaustive():
    toy1 = dataclasses.replace(TOY, t=1)

    def campaign():
        failures = wrong = 0
        for k in range(8):
            h0, h1 = toy_key(k)
            for j in range(2 * TOY.r):
                e = ErrorVector.from_sparse(SparseVector(26, (j,)), TOY.r)
                s = plant(e, h0, h1)
                out = decoder.bgf_decode(s, h0, h1, toy1)
                if not out.success:
                    failures += 1
                elif out.e_prime != e:
                    # consistent but different solution: must satisfy s exactly
                    assert plant(out.e_prime, h0, h1) == s
                    wrong += 1
        return failures, wrong

    first = campaign()
    assert campaign() == first  # failures are reproducible
    failures, wrong = first
    print(f"TOY t=1 decoding failures: {failures}/208, consistent-but-different: {wrong}")
    assert failures + wrong <= 208


def test_rejects_mismatched_key():
    h0, h1 = toy_key(0)
    with pytest.raises(DimensionError):
        decoder.upc_counters(RingElement(11, 0), h0, h1)
