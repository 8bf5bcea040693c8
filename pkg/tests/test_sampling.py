import hashlib

import numpy as np
import pytest
from scipy.stats import chi2

from pybike import sampling, vectors
from pybike.errors import FormatError, ParameterError
from pybike.params import parameter_set
from reference import sequential_fixed_weight, shake256


def test_shake256_empty_vector():
    assert shake256(b"", 4) == bytes.fromhex("46b9dd2b")
    assert hashlib.shake_256(b"").digest(4) == bytes.fromhex("46b9dd2b")


@pytest.mark.parametrize("domain", [0x00, 0x01, 0x04, 0xFF])
def test_stream_is_shake_of_seed_and_domain(domain):
    seed = bytes(range(32))
    stream = sampling.xof_init(seed, domain)
    # odd-sized reads across the internal refill boundary
    got = b"".join(stream.read(k) for k in (1, 7, 1000, 1500, 3))
    assert got == shake256(seed + bytes([domain]), len(got))


def test_stream_determinism_and_domain_separation():
    seed = bytes(32)
    assert sampling.xof_init(seed, 1).read(1000) == sampling.xof_init(seed, 1).read(1000)
    assert sampling.xof_init(seed, 0).read(32) != sampling.xof_init(seed, 1).read(32)


def test_seed_length_checked():
    with pytest.raises(FormatError):
        sampling.xof_init(b"short", 1)
    with pytest.raises(ParameterError):
        sampling.xof_init(bytes(32), 256)


def test_fixed_weight_contract():
    stream = sampling.xof_init(bytes(32), 7)
    assert sampling.sample_fixed_weight(stream, 26, 0).indices == ()
    for i in range(200):
        v = sampling.sample_fixed_weight(sampling.xof_init(i.to_bytes(32, "little"), 4), 26, 9)
        assert len(v) == 9 and len(set(v.indices)) == 9
        assert list(v.indices) == sorted(v.indices) and v.indices[-1] < 26


def test_fixed_weight_full_and_too_heavy():
    v = sampling.sample_fixed_weight(sampling.xof_init(bytes(32), 1), 26, 26)
    assert v.indices == tuple(range(26))
    with pytest.raises(ParameterError):
        sampling.sample_fixed_weight(sampling.xof_init(bytes(32), 1), 26, 27)


@pytest.mark.parametrize("n, wt", [(26, 4), (26, 20), (13, 13), (24646, 134), (12323, 71), (7, 3)])
def test_fixed_weight_matches_sequential_reference(n, wt):
    for i in range(20):
        seed = hashlib.sha3_256(bytes([i, n % 256, wt])).digest()
        got = sampling.sample_fixed_weight(sampling.xof_init(seed, 4), n, wt)
        raw = shake256(seed + b"\x04", 64 * wt + 64)
        assert list(got.indices) == sequential_fixed_weight(raw, n, wt)


def test_fixed_weight_regression_vector():
    v = vectors
    for _ in range(2):
        got = sampling.sample_fixed_weight(
            sampling.xof_init(v.FIXED_WEIGHT_SEED, v.FIXED_WEIGHT_DOMAIN), v.FIXED_WEIGHT_N, v.FIXED_WEIGHT_WT
        )
        assert got.indices == v.FIXED_WEIGHT_INDICES


def test_entropy_cap(monkeypatch):
    monkeypatch.setattr(sampling, "MAX_DRAWS", 10)
    with pytest.raises(sampling.EntropyError):
        sampling.sample_fixed_weight(sampling.xof_init(bytes(32), 1), 26, 26)


def test_uniformity_chi_squared():
    n, samples = 26, 100_000
    hist = np.zeros(n, dtype=np.int64)
    for i in range(samples):
        v = sampling.sample_fixed_weight(sampling.xof_init(i.to_bytes(32, "little"), 4), n, 1)
        hist[v.indices[0]] += 1
    expected = samples / n
    stat = float(((hist - expected) ** 2 / expected).sum())
    assert chi2.sf(stat, n - 1) > 0.001


def test_uniformity_weight_four():
    n, samples = 26, 20_000
    hist = np.zeros(n, dtype=np.int64)
    for i in range(samples):
        for j in sampling.sample_fixed_weight(sampling.xof_init(i.to_bytes(32, "big"), 0), n, 4):
            hist[j] += 1
    expected = 4 * samples / n
    stat = float(((hist - expected) ** 2 / expected).sum())
    assert chi2.sf(stat, n - 1) > 0.001


def test_derive_key_material():
    for level in ("toy", "sl1", "sl3"):
        p = parameter_set(level)
        h0, h1, sigma = sampling.derive_key_material(bytes(32), p)
        assert len(h0) == len(h1) == p.d and h0.n == h1.n == p.r
        assert len(sigma) == 32
    toy = parameter_set("toy")
    h0, h1, sigma = sampling.derive_key_material(bytes(32), toy)
    assert (h0.indices, h1.indices, sigma.hex()) == (vectors.TOY_H0, vectors.TOY_H1, vectors.TOY_SIGMA)


def test_distinct_seeds_give_distinct_keys():
    p = parameter_set("sl1")
    seen = set()
    for i in range(1000):
        h0, h1, _ = sampling.derive_key_material(i.to_bytes(32, "little"), p)
        seen.add((h0.indices, h1.indices))
    assert len(seen) == 1000
