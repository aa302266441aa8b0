"""Exceptions shared across the package."""


class QuantcatError(Exception):
    """Base class for all package errors."""


class CapExceeded(QuantcatError):
    """An enumeration would exceed its configured size cap."""

    def __init__(self, what, size, cap):
        super().__init__(f"{what}: size {size} exceeds cap {cap}")
        self.what = what
        self.size = size
        self.cap = cap


class DescriptorError(QuantcatError):
    """A JSON descriptor or element id failed to parse or validate."""


class ConsistencyError(QuantcatError):
    """An internal invariant failed; the input object was malformed."""


class IterationGuard(QuantcatError):
    """A fixpoint iteration ran past its bound (impossible on finite lattices)."""
