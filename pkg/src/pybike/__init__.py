"""Constant-time BIKE QC-MDPC key encapsulation in Python."""

from .errors import (
    BikeError,
    DimensionError,
    EntropyError,
    FormatError,
    NonInvertibleError,
    ParameterError,
)
from .kem import (
    Ciphertext,
    PrivateKey,
    PublicKey,
    decaps,
    encaps,
    encaps_random,
    keygen,
)
from .params import Level, ParameterSet, parameter_set

__version__ = "0.1.0"

__all__ = [
    "BikeError",
    "Ciphertext",
    "DimensionError",
    "EntropyError",
    "FormatError",
    "Level",
    "NonInvertibleError",
    "ParameterError",
    "ParameterSet",
    "PrivateKey",
    "PublicKey",
    "decaps",
    "encaps",
    "encaps_random",
    "keygen",
    "parameter_set",
]
