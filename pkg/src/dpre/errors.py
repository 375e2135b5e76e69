"""Error types shared across the package."""


class ResourceLimitError(RuntimeError):
    """A computation would exceed its configured resource guard."""


class NumericError(ArithmeticError):
    """An iteration overflowed or a numeric solve failed."""


class RangeOverflowError(OverflowError):
    """An exact integer result does not fit the supported addressing range."""
