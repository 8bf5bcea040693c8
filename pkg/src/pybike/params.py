"""BIKE parameter sets for NIST security levels 1, 3, 5 and a toy test level."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParameterError


class Level(enum.Enum):
    SL1 = "sl1"
    SL3 = "sl3"
    SL5 = "sl5"
    TOY = "toy"

    @classmethod
    def parse(cls, value: "Level | str") -> "Level":
        if isinstance(value, Level):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ParameterError(f"unknown security level {value!r}") from None


# one-byte tags used by the key/ciphertext wire formats
LEVEL_TAGS = {Level.TOY: 0x00, Level.SL1: 0x01, Level.SL3: 0x03, Level.SL5: 0x05}
TAG_LEVELS = {tag: level for level, tag in LEVEL_TAGS.items()}


def _factor(n: int) -> list[int]:
    """Distinct prime factors of n by trial division."""
    primes = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            primes.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        primes.append(n)
    return primes


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return _factor(n) == [n]


def two_is_primitive(r: int) -> bool:
    """True iff r is prime and 2 generates the multiplicative group mod r."""
    if not is_prime(r) or r == 2:
        return False
    order = r - 1
    return all(pow(2, order // q, r) != 1 for q in _factor(order))


@dataclass(frozen=True)
class ParameterSet:
    level: Level
    r: int
    w: int
    t: int
    nb_iter: int
    tau: int
    threshold_a: Fraction
    threshold_b: Fraction
    threshold_floor: int
    ell: int = 256

    def __post_init__(self):
        if self.w % 2 or self.w <= 0:
            raise ParameterError("w must be a positive even integer")
        if not self.d < self.r or not 0 < self.t < 2 * self.r:
            raise ParameterError("need w/2 < r and 0 < t < 2r")
        if self.threshold_floor < (self.d + 2) // 2:
            raise ParameterError("threshold floor below ceil((w/2 + 1)/2)")
        if self.ell % 8:
            raise ParameterError("ell must be a whole number of bytes")

    @property
    def d(self) -> int:
        """Column weight of each circulant block, w/2."""
        return self.w // 2

    @property
    def n(self) -> int:
        return 2 * self.r

    @property
    def r_bytes(self) -> int:
        return (self.r + 7) // 8

    @property
    def ell_bytes(self) -> int:
        return self.ell // 8

    @property
    def pk_bits(self) -> int:
        return self.r

    @property
    def ct_bits(self) -> int:
        return self.r + self.ell


_TABLE = {
    Level.SL1: ParameterSet(
        Level.SL1, r=12323, w=142, t=134, nb_iter=5, tau=3,
        threshold_a=Fraction("0.0069722"), threshold_b=Fraction("13.530"),
        threshold_floor=36,
    ),
    Level.SL3: ParameterSet(
        Level.SL3, r=24659, w=206, t=199, nb_iter=5, tau=3,
        threshold_a=Fraction("0.005265"), threshold_b=Fraction("15.2588"),
        threshold_floor=52,
    ),
    Level.SL5: ParameterSet(
        Level.SL5, r=40973, w=274, t=264, nb_iter=5, tau=3,
        threshold_a=Fraction("0.00402312"), threshold_b=Fraction("17.8785"),
        threshold_floor=69,
    ),
    # tiny instance for brute-force oracles only, no security
    Level.TOY: ParameterSet(
        Level.TOY, r=13, w=6, t=2, nb_iter=5, tau=1,
        threshold_a=Fraction(0), threshold_b=Fraction(0),
        threshold_floor=2,
    ),
}

# checked at import for the toy set; production rows are asserted by table
# (tests re-verify all of them with an independent enumeration)
if not two_is_primitive(_TABLE[Level.TOY].r):
    raise ParameterError("toy r must be prime with 2 primitive")


def parameter_set(level: Level | str) -> ParameterSet:
    """Return the fixed constants for a security level."""
    return _TABLE[Level.parse(level)]


ALL_LEVELS = tuple(_TABLE)
