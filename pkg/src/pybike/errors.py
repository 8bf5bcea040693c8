"""Exception hierarchy shared by all pybike modules."""


class BikeError(Exception):
    """Base class for every error raised by pybike."""


class DimensionError(BikeError, ValueError):
    """Operands belong to rings (or vector spaces) of different size."""


class NonInvertibleError(BikeError, ArithmeticError):
    """The ring element has no multiplicative inverse."""


class FormatError(BikeError, ValueError):
    """A byte string does not decode to a valid object."""


class ParameterError(BikeError, ValueError):
    """Unknown security level, mismatched levels, or out-of-range arguments."""


class EntropyError(BikeError, RuntimeError):
    """Rejection sampling exceeded its draw budget; indicates a bug."""
