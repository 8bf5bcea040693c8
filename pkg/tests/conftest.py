import hashlib

import pytest

from pybike import decoder, kem


@pytest.fixture(autouse=True)
def _check_decodes(monkeypatch):
    # every successful decode is re-verified against the syndrome
    monkeypatch.setattr(decoder, "CHECK_SOLUTIONS", True)


def seed_for(label: str, i: int = 0) -> bytes:
    return hashlib.sha3_256(f"{label}/{i}".encode()).digest()


@pytest.fixture(scope="session")
def sl1_keys():
    return kem.keygen(seed_for("sl1-fixture"), "sl1")
