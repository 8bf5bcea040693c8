"""Quick self-check: regression vectors plus round trips."""

from __future__ import annotations

import hashlib
from typing import Callable

from . import kem, oracles, sampling, vectors
from .params import parameter_set
from .ring import densify, mul_sparse


def _expect(cond: bool, what: str) -> None:
    if not cond:
        raise AssertionError(what)


def _check_vectors() -> None:
    v = vectors
    got = sampling.sample_fixed_weight(
        sampling.xof_init(v.FIXED_WEIGHT_SEED, v.FIXED_WEIGHT_DOMAIN),
        v.FIXED_WEIGHT_N, v.FIXED_WEIGHT_WT,
    )
    _expect(got.indices == v.FIXED_WEIGHT_INDICES, "fixed-weight sampler vector")

    toy = parameter_set("toy")
    h0, h1, sigma = sampling.derive_key_material(bytes(32), toy)
    _expect((h0.indices, h1.indices, sigma.hex()) == (v.TOY_H0, v.TOY_H1, v.TOY_SIGMA), "key material")

    e = oracles.hash_H(bytes(32), toy)
    _expect((tuple(e.e0.support()), tuple(e.e1.support())) == (v.TOY_H_E0, v.TOY_H_E1), "H oracle")
    _expect(oracles.hash_L(e).hex() == v.TOY_L, "L oracle")

    sk, pk = kem.keygen(v.SL1_KEY_SEED, "sl1")
    _expect(hashlib.sha3_256(kem.serialize_pk(pk)).hexdigest() == v.SL1_PK_SHA3, "SL1 public key")
    _expect(hashlib.sha3_256(kem.serialize_sk(sk)).hexdigest() == v.SL1_SK_SHA3, "SL1 private key")
    key, ct = kem.encaps(pk, v.SL1_MESSAGE)
    _expect(hashlib.sha3_256(kem.serialize_ct(ct)).hexdigest() == v.SL1_CT_SHA3, "SL1 ciphertext")
    _expect(key.hex() == v.SL1_SHARED, "SL1 shared secret")
    _expect(kem.decaps(sk, ct) == key, "SL1 decapsulation")


def _check_round_trips(rounds: int = 3) -> None:
    for level in ("sl1", "sl3"):
        for i in range(rounds):
            seed = hashlib.sha3_256(b"selftest" + bytes([i])).digest()
            sk, pk = kem.keygen(seed, level)
            _expect(mul_sparse(pk.h, sk.h0) == densify(sk.h1), "public key identity")
            key, ct = kem.encaps(pk, seed[::-1])
            _expect(kem.decaps(sk, ct) == key, f"{level} round trip {i}")
            # implicit rejection on a tampered ciphertext
            bad = kem.Ciphertext(ct.s, bytes([ct.m_masked[0] ^ 1]) + ct.m_masked[1:])
            _expect(kem.decaps(sk, bad) == oracles.hash_K(sk.sigma, bad), "implicit rejection")
            for blob, parse in (
                (kem.serialize_pk(pk), kem.deserialize_pk),
                (kem.serialize_sk(sk), kem.deserialize_sk),
                (kem.serialize_ct(ct), kem.deserialize_ct),
            ):
                _expect(parse(blob) in (pk, sk, ct), "serialization round trip")


CHECKS: dict[str, Callable[[], None]] = {
    "regression vectors": _check_vectors,
    "round trips": _check_round_trips,
}


def run(report: Callable[[str], None] = print) -> bool:
    ok = True
    for name, check in CHECKS.items():
        try:
            check()
        except AssertionError as exc:
            ok = False
            report(f"FAIL {name}: {exc}")
        else:
            report(f"ok   {name}")
    return ok
