import random

import pytest

from pybike import oracles, vectors
from pybike.kem import Ciphertext
from pybike.params import parameter_set
from pybike.ring import RingElement, SparseVector, monomial, random_element, serialize
from reference import sha3_384

TOY = parameter_set("toy")
SL1 = parameter_set("sl1")


@pytest.mark.parametrize("p", [TOY, SL1])
def test_hash_H_weight_and_determinism(p):
    for i in range(20):
        m = bytes([i]) * 32
        e = oracles.hash_H(m, p)
        assert e.weight == p.t
        assert oracles.hash_H(m, p) == e


def test_hash_H_regression():
    e = oracles.hash_H(bytes(32), TOY)
    assert tuple(e.e0.support()) == vectors.TOY_H_E0
    assert tuple(e.e1.support()) == vectors.TOY_H_E1


def test_error_vector_sparse_round_trip():
    v = SparseVector(26, (0, 5, 12, 13, 25))
    e = oracles.ErrorVector.from_sparse(v, 13)
    assert e.e0.support() == [0, 5, 12] and e.e1.support() == [0, 12]
    assert e.sparse() == v


def test_hash_L_layout_and_length():
    e = oracles.hash_H(bytes(32), TOY)
    digest = oracles.hash_L(e)
    assert len(digest) == 32
    # independent Keccak over the documented input layout
    assert digest == sha3_384(b"\x05" + serialize(e.e0) + serialize(e.e1))[:32]
    assert digest.hex() == vectors.TOY_L


def test_hash_L_avalanche():
    rng = random.Random(1)
    e = oracles.hash_H(bytes(32), SL1)
    base = int.from_bytes(oracles.hash_L(e), "little")
    for _ in range(100):
        j = rng.randrange(SL1.r)
        flipped = oracles.ErrorVector(e.e0, RingElement(SL1.r, e.e1.bits ^ (1 << j)))
        dist = (base ^ int.from_bytes(oracles.hash_L(flipped), "little")).bit_count()
        assert 96 <= dist <= 160


def test_hash_K_layout_and_prefix_sensitivity():
    rng = random.Random(2)
    for _ in range(100):
        c = Ciphertext(random_element(SL1.r, rng), rng.randbytes(32))
        m, sigma = rng.randbytes(32), rng.randbytes(32)
        k = oracles.hash_K(m, c)
        assert len(k) == 32
        assert k == sha3_384(b"\x06" + m + serialize(c.s) + c.m_masked)[:32]
        assert oracles.hash_K(sigma, c) != k


def test_oracles_are_domain_separated():
    # the same raw bytes fed to L and K give different digests
    e = oracles.ErrorVector(monomial(TOY.r, 0), monomial(TOY.r, 1))
    raw = serialize(e.e0) + serialize(e.e1)
    c = Ciphertext(RingElement(TOY.r, 0), b"")
    assert oracles.hash_L(e) != oracles.hash_K(raw[:0], Ciphertext(e.e0, serialize(e.e1)))
    assert oracles.hash_L(e) != sha3_384(raw)[:32]
    assert oracles.hash_K(b"", c) != sha3_384(serialize(c.s))[:32]
