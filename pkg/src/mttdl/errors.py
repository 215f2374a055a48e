"""Exception types shared across the toolkit."""


class MttdlError(Exception):
    """Base class for all toolkit errors."""


class InvalidConfigError(MttdlError, ValueError):
    """A system configuration or simulation spec violates its invariants."""


class InvalidArgumentError(MttdlError, ValueError):
    """A scalar argument is outside its documented domain."""


class ModelOverflowError(MttdlError, OverflowError):
    """An estimate is not representable in double precision (overflow or underflow to zero)."""


class NumericInstabilityError(MttdlError, ArithmeticError):
    """The linear-system solver met a non-positive or non-finite pivot."""
